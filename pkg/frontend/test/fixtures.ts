/* Frozen server-side fixtures the client tests check against.
 *
 * CANONICAL_M31 is the gateway serializer's own output for the M31 and
 * galaxy conjunction; the record text is a stored fixture record served
 * verbatim over the wire; the FITS bytes are a fixture dataset.  All three
 * were captured from the running server, not produced by the code under
 * test.
 */

export const CANONICAL_M31 =
  '<query profile="astro-1.0"><and><term attr="object-name" rel="eq">M31</term>' +
  '<term attr="object-type" rel="eq">galaxy</term></and></query>';

export const RECORD_3C273 = "<aml docid=\"adil-96-p020\"><metadata id=\"meta\"><title>A 6 cm survey of 3C 273</title><creator>A. Petrov</creator><creator>R. Blake</creator><subject>continuum</subject><date>1996-06</date><identifier>adil-96-p020</identifier></metadata><astronomical-object id=\"obj\" object-type=\"quasar\"><identifier>3C 273</identifier><position system=\"eq\" lon=\"187.27279853184646\" lat=\"2.0523310950727405\"/><measurement name=\"flux-density\" value=\"2.3\" unit=\"Jy\" uncertainty=\"0.1\"/></astronomical-object></aml>";

export const ASTRO_PROFILE = {
  id: "astro-1.0",
  attributes: [
    { name: "creator", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "date", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "description", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "identifier", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "object-name", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "object-type", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "sky-position", kind: "sky-position", relations: ["within"] },
    { name: "subject", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "title", kind: "text", relations: ["contains", "eq", "ne"] },
    { name: "wavelength", kind: "number+unit", relations: ["eq", "ge", "gt", "le", "lt", "ne"] },
  ],
};

// fixture dataset disk_i16: 32x24, BITPIX 16, BSCALE 0.5, BZERO 100
export const DISK_I16_BASE64 =
  "U0lNUExFICA9ICAgICAgICAgICAgICAgICAgICBUIC8gY29uZm9ybXMgdG8gRklUUyAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICBCSVRQSVggID0gICAgICAgICAgICAgICAgICAgMTYgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgIE5BWElTICAgPSAgICAgICAgICAgICAgICAgICAgMiAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgTkFYSVMxICA9ICAgICAgICAgICAgICAgICAgIDMyICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICBOQVhJUzIgID0gICAgICAgICAgICAgICAgICAgMjQgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgIEJTQ0FMRSAgPSAgICAgICAgICAgICAgICAgIDAuNSAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgQlpFUk8gICA9ICAgICAgICAgICAgICAgIDEwMC4wICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICBPQkpFQ1QgID0gJ2ZpeHR1cmUgZmllbGQnICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgIEVORCAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg" +
  "ICAgICAgICAgICAgICAgICAgICAgICAgICAgICAg/a78ZPzK/3H/Bf02/MT9qQLl/JP9CP3UAEQCJf0q/M3+sgDO/n7/8wFh/Zv8" +
  "VQAyAtL9MfxL/0gAcgFM/hz9ZgB6/af/g/+1/4j/lgDzAHEC+AGTAMsBfAEzAccBjgIOA7P+vfx9AiQCQgFj/K8CW/0g/9AACf17" +
  "AfUDbAKJ/OUCnv1OAL3+4v4D/3f/vQE2/6IBhwKRAYEDnP4YAloBgP6MAb8ABvz//Pr94gJV/Fb8VPyC/GQCcQLh/ssCLwJAAOoB" +
  "nwC2At/8e/yiAJAArADX/OT/D/7j/lYA8v9zAz/9sf7QAasCiQLE//z+xP3a/9H9Df7J/8z8GP6o/tACHQNSAtEApAIoAAoCrPxR" +
  "ANT8uwNV/ZEDbwM3/BoBhf4+AUT+CPwt/zsDGwG+AkP9r/3i/u0CGv26/HcDv/3bAuD9Tf5M/QgA1QHq/Bz8w/1pAHQDjv4aAe0D" +
  "1v8AAXj9//1eAav9zvwmA5sB8f3S/Z0BywDDAFsAFP91/rgBG/2R/psBKQF//q8CRAGq/7IAQgEmAXL84wCRAVr/qAObAz8Afvxb" +
  "ADIDHf/w/rz9YPzn/+n93AKr/ZoCh//n/iL9rP9l/YEB8/yk/6wBjv/fAtv9UgKI/CkD0/xL/SABMwOqAQX93/+aA0cB8/z0/t4D" +
  "Zv+d/xP92f2mA4YB7AIJA9j+ff5c/0YBdP9n/VADSvxaAlH/cgGkAPAA1v+p/Tj96AJ4AX3/UwFZAsP+Jv2//voCWP6AABwDhAAT" +
  "AF//SQCh/n7+uAB5/ewAxP2w/cf82/xP/bICAAETA64Bf//9/w//UgMA/JgCfQFvAQX/NP7hA7MDev/FApYC+gAIA94Ddf9RAoUD" +
  "Uv8tAXMCJwCa/VX9FgCjAAb+yfwjATkCqgPL/i8Cl/2AA3IC6wNz/igCv/30AI8CtPwj/3UDLwGfAaH+Bf1fAzMB9v3BAOgDdv6o" +
  "/9sDxf/IATX8ngHM/7kBMwFSAwgATwOW/QX8qPzi/boAgwK0AfUDO/6G/JsDOgH7/SsBu/+y/csDRv3CAg/97AKo/mH/zwLk/CcC" +
  "yQJ9/i/85QDs/Q0BDP2w/lIACP2e/QH/qAOdAwr/bgF8/kv93QC1/OH9JgBo/5r9w/3t/JkAAP2PA4//Zf+a/EgCKgAYAqn/vAGw" +
  "/6X+Yfzj/9YBogFgARcCmwL7/yb9dQJFAPMBNAN1ALEDVfxDAGsC+f50/83/xQNZ/ff9eAEO/80Dm/89Ai//SgLNAFH9Ffw+A9EB" +
  "AQI7AND+tAHz/JYBsf7uAUADNgNrATf/DgEk/G3/0AKhAwEAegNVAuEAsv6L/WIBkgKo/kb/E/15A4UBf/1IAv/9k/xDAXgAcAAh" +
  "AGv9mf2AABABIP+bAn39Pfz6/CgBpf5OAJcDEv2u/Tb9FQFPA5b9WQBRAwIApgBo/NP/SwPYArcCgAAp/WUCgwBLAO78WAHa/9EA" +
  "uQJkAiT8IwMkAkr+CPzF/C/+k/0bAk4CrAMo/1kACABrAij/pgDr/zP8wP0r/7IAZP9uAh4CkgEC/l0BbgOh/rr+sAGdAIn/Sv6R" +
  "/a/8Z/y6/uf9LgF6/E7/+AGSAO8BtP0/Ag8DNQDZA3j/vAEd/5EAbAJlAXIANf0//KUAev0mA6QDQgJI/eUCP/6W/VQAwQAo/yz/" +
  "IgHfA4wCFAISATgDdgHj/eUBRAF/Ahv9BQHFAHz+7vxE/H39oQPa/uf/FQM4/cL/QgFY/84Ad/zpAVACiPzH/zv/jP2+AoUA3/6y" +
  "/rf/Gf5AAmH8LP9oAJn86f3XAU3/OAKp/PQAPgLjA8/9Fv5zAbn+bgL0/ZX9TfyA/cYAAwNnAKsB9gAy/9/+QP01AbYB9wFt/bAC" +
  "1/6b/6QBMgL6AZb/dv5G/6z+rAPb/UkAxgCk/l8Cw/6T/R0DuQIj/Lv9n/7x/gP82/zXAjL/Sf8oAy79dALA/NcANv8UAxMBKAPm" +
  "AZr8pgHe/jz9if+T/6z8UwLlAa0DrABr/m8BV/71AvUA/wLF/0QBqf7qATb+qgN7/YQBvv4Q/88DXwK5/9MALP43AAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA" +
  "AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA";

export function fitsBytes(base64: string): ArrayBuffer {
  const bin = atob(base64);
  const out = new Uint8Array(bin.length);
  for (let i = 0; i < bin.length; i++) out[i] = bin.charCodeAt(i);
  return out.buffer;
}
