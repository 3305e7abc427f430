/* Session polling: one status request per second until every source
 * settles, never more than one in flight.
 */

import { GatewayClient, SessionInfo } from "./api.js";

export function settled(info: SessionInfo): boolean {
  return Object.values(info.sources).every((s) => s.state !== "pending");
}

export class SessionPoller {
  private timer: ReturnType<typeof setInterval> | null = null;
  private inFlight = false;
  private stopped = false;

  constructor(
    private readonly client: GatewayClient,
    readonly sid: string,
    private readonly onUpdate: (info: SessionInfo) => void,
    private readonly onError: (err: unknown) => void = () => {},
    private readonly intervalMs = 1000,
  ) {}

  start(): void {
    if (this.timer !== null || this.stopped) return;
    void this.tick();
    this.timer = setInterval(() => void this.tick(), this.intervalMs);
  }

  stop(): void {
    this.stopped = true;
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  private async tick(): Promise<void> {
    if (this.inFlight || this.stopped) return;
    this.inFlight = true;
    try {
      const info = await this.client.session(this.sid);
      if (this.stopped) return;
      this.onUpdate(info);
      if (settled(info)) this.stop();
    } catch (err) {
      this.stop();
      this.onError(err);
    } finally {
      this.inFlight = false;
    }
  }
}
