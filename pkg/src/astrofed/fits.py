"""FITS-format 2-D images: parse, serialize, and the browse primitives.

The container layout is bit-exact: 80-character header cards in 2880-byte
blocks, big-endian pixel data padded to a block boundary.  Only single-HDU
NAXIS=2 images are handled; cubes are rejected.

Browse primitives follow the raw/physical split: `cutout` and `thumbnail`
copy raw pixel values and keep the scaling cards, `pixel` and `histogram`
work on physical values (BZERO + BSCALE * raw).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BLOCK = 2880
CARD = 80

# BITPIX -> serialized dtype (big-endian where endianness applies)
_DTYPES = {8: "u1", 16: ">i2", 32: ">i4", -32: ">f4", -64: ">f8"}

_COMMENT_KEYWORDS = ("COMMENT", "HISTORY", "")


class FitsFormatError(ValueError):
    """Raised for byte streams that are not an acceptable FITS image."""


@dataclass(frozen=True)
class Card:
    """One header card; comment-class cards carry text in `comment` only."""

    keyword: str
    value: bool | int | float | str | None = None
    comment: str | None = None


@dataclass(frozen=True)
class BBox:
    """Zero-based inclusive pixel rectangle."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0 or self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError(f"invalid bounding box {self}")

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1


def compose_bbox(outer: BBox, inner: BBox) -> BBox:
    """The box selecting, in the original image, what `inner` selects in a cutout by `outer`."""
    return BBox(
        outer.x0 + inner.x0, outer.y0 + inner.y0, outer.x0 + inner.x1, outer.y0 + inner.y1
    )


@dataclass(frozen=True)
class Histogram:
    nbins: int
    lo: float
    hi: float
    counts: tuple[int, ...]
    out_of_range: int

    @property
    def total(self) -> int:
        return sum(self.counts) + self.out_of_range


@dataclass(frozen=True, eq=False)
class FitsDataset:
    """Parsed image: complete card list plus the raw pixel array.

    `pixels` is row-major with shape (naxis2, naxis1), so pixel (x, y) is
    pixels[y, x]; dtype matches BITPIX with big-endian byte order preserved.
    """

    header: tuple[Card, ...]
    pixels: np.ndarray

    @property
    def naxis1(self) -> int:
        return self.pixels.shape[1]

    @property
    def naxis2(self) -> int:
        return self.pixels.shape[0]

    @property
    def bitpix(self) -> int:
        return self._card_value("BITPIX")

    @property
    def bscale(self) -> float:
        v = self._card_value("BSCALE")
        return 1.0 if v is None else float(v)

    @property
    def bzero(self) -> float:
        v = self._card_value("BZERO")
        return 0.0 if v is None else float(v)

    def _card_value(self, keyword: str):
        for c in self.header:
            if c.keyword == keyword:
                return c.value
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, FitsDataset):
            return NotImplemented
        return (
            self.header == other.header
            and self.pixels.shape == other.pixels.shape
            and self.pixels.tobytes() == other.pixels.tobytes()
        )


# ---------------------------------------------------------------------------
# card level

def _parse_card(raw: str) -> Card:
    keyword = raw[0:8].rstrip()
    if keyword in _COMMENT_KEYWORDS or raw[8:10] != "= ":
        return Card(keyword, None, raw[8:].rstrip() or None)
    body = raw[10:]
    if body.lstrip().startswith("'"):
        # quoted string; '' is an embedded quote
        text = body.lstrip()
        chars: list[str] = []
        i = 1
        while i < len(text):
            ch = text[i]
            if ch == "'":
                if i + 1 < len(text) and text[i + 1] == "'":
                    chars.append("'")
                    i += 2
                    continue
                break
            chars.append(ch)
            i += 1
        else:
            raise FitsFormatError(f"unterminated string in card {keyword}")
        rest = text[i + 1:]
        comment = rest.split("/", 1)[1].strip() if "/" in rest else None
        return Card(keyword, "".join(chars).rstrip(), comment)
    value_part, _, comment = body.partition("/")
    comment = comment.strip() or None
    token = value_part.strip()
    if token == "T":
        return Card(keyword, True, comment)
    if token == "F":
        return Card(keyword, False, comment)
    try:
        return Card(keyword, int(token), comment)
    except ValueError:
        pass
    try:
        return Card(keyword, float(token.replace("D", "E").replace("d", "e")), comment)
    except ValueError:
        raise FitsFormatError(f"bad value {token!r} in card {keyword}") from None


def _format_card(c: Card) -> str:
    if c.keyword == "END":
        return "END".ljust(CARD)
    if c.value is None:
        return (c.keyword.ljust(8) + (c.comment or "")).ljust(CARD)[:CARD]
    if isinstance(c.value, bool):
        field = ("T" if c.value else "F").rjust(20)
    elif isinstance(c.value, int):
        field = str(c.value).rjust(20)
    elif isinstance(c.value, float):
        field = repr(c.value).rjust(20)
    else:
        field = "'" + str(c.value).replace("'", "''") + "'"
    out = c.keyword.ljust(8) + "= " + field
    if c.comment:
        out += " / " + c.comment
    if len(out) > CARD:
        out = out[:CARD]
    return out.ljust(CARD)


# ---------------------------------------------------------------------------
# whole files

def parse_fits(data: bytes) -> FitsDataset:
    """Parse FITS bytes into header cards and the raw pixel array."""
    if len(data) < BLOCK:
        raise FitsFormatError("file shorter than one header block")
    cards: list[Card] = []
    pos = 0
    ended = False
    while not ended:
        if pos + BLOCK > len(data):
            raise FitsFormatError("missing END card")
        block = data[pos:pos + BLOCK]
        try:
            text = block.decode("ascii")
        except UnicodeDecodeError:
            raise FitsFormatError("non-ASCII bytes in header") from None
        for i in range(0, BLOCK, CARD):
            raw = text[i:i + CARD]
            card = _parse_card(raw)
            if card.keyword == "END":
                cards.append(Card("END"))
                ended = True
                break
            cards.append(card)
        pos += BLOCK

    if not cards or cards[0].keyword != "SIMPLE" or cards[0].value is not True:
        raise FitsFormatError("missing SIMPLE = T")

    by_key = {c.keyword: c.value for c in cards}
    bitpix = by_key.get("BITPIX")
    if bitpix not in _DTYPES:
        raise FitsFormatError(f"unsupported BITPIX {bitpix!r}")
    if by_key.get("NAXIS") != 2:
        raise FitsFormatError(f"only NAXIS=2 images are supported, got {by_key.get('NAXIS')!r}")
    naxis1, naxis2 = by_key.get("NAXIS1"), by_key.get("NAXIS2")
    if not isinstance(naxis1, int) or not isinstance(naxis2, int) or naxis1 <= 0 or naxis2 <= 0:
        raise FitsFormatError(f"bad axis lengths NAXIS1={naxis1!r} NAXIS2={naxis2!r}")

    dtype = np.dtype(_DTYPES[bitpix])
    nbytes = naxis1 * naxis2 * dtype.itemsize
    if pos + nbytes > len(data):
        raise FitsFormatError("truncated pixel data")
    pixels = np.frombuffer(data[pos:pos + nbytes], dtype=dtype).reshape(naxis2, naxis1)
    return FitsDataset(header=tuple(cards), pixels=pixels)


def serialize_fits(d: FitsDataset) -> bytes:
    """Render back to FITS bytes, zero-padding data to a block boundary."""
    header = "".join(_format_card(c) for c in d.header)
    if len(header) % BLOCK:
        header += " " * (BLOCK - len(header) % BLOCK)
    body = d.pixels.astype(_DTYPES[d.bitpix]).tobytes()
    if len(body) % BLOCK:
        body += b"\x00" * (BLOCK - len(body) % BLOCK)
    return header.encode("ascii") + body


def from_pixels(
    pixels: np.ndarray,
    bscale: float = 1.0,
    bzero: float = 0.0,
    extra_cards: tuple[Card, ...] = (),
) -> FitsDataset:
    """Build a dataset with a standard header around a 2-D array."""
    if pixels.ndim != 2:
        raise ValueError("expected a 2-D pixel array")
    dtype = pixels.dtype.newbyteorder(">") if pixels.dtype.kind != "u" else pixels.dtype
    bitpix = {("u", 1): 8, ("i", 2): 16, ("i", 4): 32, ("f", 4): -32, ("f", 8): -64}.get(
        (pixels.dtype.kind, pixels.dtype.itemsize)
    )
    if bitpix is None:
        raise ValueError(f"no BITPIX for dtype {pixels.dtype}")
    cards = [
        Card("SIMPLE", True, "conforms to FITS"),
        Card("BITPIX", bitpix),
        Card("NAXIS", 2),
        Card("NAXIS1", pixels.shape[1]),
        Card("NAXIS2", pixels.shape[0]),
    ]
    if bscale != 1.0:
        cards.append(Card("BSCALE", float(bscale)))
    if bzero != 0.0:
        cards.append(Card("BZERO", float(bzero)))
    cards.extend(extra_cards)
    cards.append(Card("END"))
    return FitsDataset(header=tuple(cards), pixels=pixels.astype(dtype))


# ---------------------------------------------------------------------------
# browse primitives

def pixel(d: FitsDataset, x: int, y: int) -> float:
    """Physical value at (x, y): BZERO + BSCALE * raw."""
    if not (0 <= x < d.naxis1 and 0 <= y < d.naxis2):
        raise ValueError(f"pixel ({x}, {y}) out of bounds for {d.naxis1}x{d.naxis2}")
    return d.bzero + d.bscale * float(d.pixels[y, x])


def _rewrite_header(d: FitsDataset, shape: tuple[int, int], note: str) -> tuple[Card, ...]:
    cards: list[Card] = []
    for c in d.header:
        if c.keyword == "NAXIS1":
            cards.append(Card("NAXIS1", shape[1], c.comment))
        elif c.keyword == "NAXIS2":
            cards.append(Card("NAXIS2", shape[0], c.comment))
        elif c.keyword == "END":
            cards.append(Card("HISTORY", None, note))
            cards.append(c)
        else:
            cards.append(c)
    return tuple(cards)


def cutout(d: FitsDataset, b: BBox) -> FitsDataset:
    """Lossless sub-image: raw values copied, scaling cards preserved."""
    if b.x1 >= d.naxis1 or b.y1 >= d.naxis2:
        raise ValueError(f"bounding box {b} exceeds image {d.naxis1}x{d.naxis2}")
    sub = d.pixels[b.y0:b.y1 + 1, b.x0:b.x1 + 1].copy()
    note = f"cutout [{b.x0}:{b.x1},{b.y0}:{b.y1}] of {d.naxis1}x{d.naxis2}"
    return FitsDataset(header=_rewrite_header(d, sub.shape, note), pixels=sub)


def thumbnail(d: FitsDataset, stride: int) -> FitsDataset:
    """Subsample every stride-th pixel in both axes; stride 1 is identity."""
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    sub = d.pixels[::stride, ::stride].copy()
    if stride == 1:
        return FitsDataset(header=d.header, pixels=sub)
    note = f"thumbnail stride {stride} of {d.naxis1}x{d.naxis2}"
    return FitsDataset(header=_rewrite_header(d, sub.shape, note), pixels=sub)


def histogram(d: FitsDataset, nbins: int, lo: float, hi: float) -> Histogram:
    """Count physical values into nbins equal bins on [lo, hi].

    Bin i covers lo + i*w <= v < lo + (i+1)*w; v == hi lands in the last
    bin; values outside [lo, hi] are tallied separately so that counts plus
    out-of-range always equals the pixel count.
    """
    if nbins < 1:
        raise ValueError(f"nbins must be >= 1, got {nbins}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    phys = d.bzero + d.bscale * d.pixels.astype(np.float64).ravel()
    w = (hi - lo) / nbins
    edges = lo + np.arange(nbins + 1, dtype=np.float64) * w
    in_range = (phys >= lo) & (phys <= hi)
    kept = phys[in_range]
    idx = np.searchsorted(edges, kept, side="right") - 1
    idx = np.clip(idx, 0, nbins - 1)
    counts = np.bincount(idx, minlength=nbins)
    return Histogram(
        nbins=nbins,
        lo=float(lo),
        hi=float(hi),
        counts=tuple(int(c) for c in counts),
        out_of_range=int(phys.size - kept.size),
    )


def physical_range(d: FitsDataset) -> tuple[float, float]:
    """Observed (min, max) of physical values, for default histogram bounds."""
    phys = d.bzero + d.bscale * d.pixels.astype(np.float64)
    return float(phys.min()), float(phys.max())
