import init, { soluble_curves, quartic_curves, quartic_wavefunctions } from "./pkg/excite_iter_wasm.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#999", "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

function draw(x, series, labels) {
  const c = $("plot");
  const ctx = c.getContext("2d");
  const pad = 40;
  ctx.clearRect(0, 0, c.width, c.height);
  const finite = series.flat().filter(Number.isFinite);
  let lo = Math.min(0, ...finite);
  let hi = Math.max(...finite);
  if (hi === lo) hi = lo + 1;
  const xmax = x[x.length - 1];
  const px = (v) => pad + (v / xmax) * (c.width - 2 * pad);
  const py = (v) => c.height - pad - ((v - lo) / (hi - lo)) * (c.height - 2 * pad);

  ctx.strokeStyle = "#000";
  ctx.beginPath();
  ctx.moveTo(pad, py(0));
  ctx.lineTo(c.width - pad, py(0));
  ctx.moveTo(pad, pad);
  ctx.lineTo(pad, c.height - pad);
  ctx.stroke();
  ctx.fillStyle = "#000";
  ctx.fillText(xmax.toFixed(2), c.width - pad - 10, c.height - pad + 15);
  ctx.fillText(hi.toPrecision(3), 2, pad);

  series.forEach((ys, k) => {
    ctx.strokeStyle = COLORS[k % COLORS.length];
    ctx.beginPath();
    let started = false;
    ys.forEach((y, i) => {
      if (!Number.isFinite(y)) return;
      if (started) ctx.lineTo(px(x[i]), py(y));
      else { ctx.moveTo(px(x[i]), py(y)); started = true; }
    });
    ctx.stroke();
    ctx.fillStyle = ctx.strokeStyle;
    ctx.fillText(labels[k], c.width - pad - 60, pad + 14 * k);
  });
}

function render() {
  for (const id of ["delta", "g", "iters"]) $(id + "-v").textContent = $(id).value;
  const op = document.querySelector("input[name=op]:checked").value;
  const delta = parseFloat($("delta").value);
  const g = parseFloat($("g").value);
  const anchor = parseFloat($("anchor").value);
  const iters = parseInt($("iters").value, 10);
  try {
    if (op === "wave") {
      const r = JSON.parse(quartic_wavefunctions(g, iters));
      draw(r.x, [r.psi_gd, r.psi_ex], ["ψ_gd", "ψ_ex"]);
      $("info").textContent = `E_gd = ${r.e_gd.toFixed(8)}\nE_odd = ${r.e_odd.toFixed(8)}`;
      return;
    }
    const r = op === "soluble"
      ? JSON.parse(soluble_curves(delta, anchor, iters))
      : JSON.parse(quartic_curves(g, anchor, iters, $("linear").checked));
    draw(r.x, r.chi, r.chi.map((_, n) => `χ_${n}`));
    const lines = [`E_gd = ${r.e_gd.toFixed(8)}`, `status: ${r.status}`];
    r.eps.forEach((e, i) => lines.push(`ε_${i + 1} = ${e.toPrecision(10)}`));
    if (r.exact_eps !== undefined) lines.push(`exact ε = ${r.exact_eps.toPrecision(10)}`);
    $("info").textContent = lines.join("\n");
  } catch (e) {
    $("info").textContent = String(e);
  }
}

await init();
document.querySelectorAll("input, select").forEach((el) => el.addEventListener("input", render));
render();
