import init, { spectrum, noise_sweep, sampling_comparison } from "./pkg/dgsp_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const graph = () => [num("n"), num("p"), num("w"), BigInt(num("seed"))];

function guard(out, f) {
  try {
    out.classList.remove("err");
    f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

// Maps data coordinates onto a canvas with a uniform margin.
function frame(canvas, xmin, xmax, ymin, ymax, m = 30) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const sx = (canvas.width - 2 * m) / (xmax - xmin || 1);
  const sy = (canvas.height - 2 * m) / (ymax - ymin || 1);
  return {
    ctx,
    x: (v) => m + (v - xmin) * sx,
    y: (v) => canvas.height - m - (v - ymin) * sy,
  };
}

function drawSpectrum(canvas, metrics, color) {
  const pts = metrics.spectrum;
  const r = Math.max(...pts.map(([re, im]) => Math.max(Math.abs(re - 1), Math.abs(im))), 1) * 1.1;
  const f = frame(canvas, 1 - r, 1 + r, -r, r);
  f.ctx.strokeStyle = "#ddd";
  f.ctx.beginPath();
  f.ctx.moveTo(f.x(1 - r), f.y(0));
  f.ctx.lineTo(f.x(1 + r), f.y(0));
  f.ctx.moveTo(f.x(0), f.y(-r));
  f.ctx.lineTo(f.x(0), f.y(r));
  f.ctx.stroke();
  f.ctx.fillStyle = color;
  for (const [re, im] of pts) {
    f.ctx.beginPath();
    f.ctx.arc(f.x(re), f.y(im), 3, 0, 2 * Math.PI);
    f.ctx.fill();
  }
  f.ctx.fillStyle = "#000";
  f.ctx.fillText(`${metrics.graph}: κ=${metrics.kappa.toPrecision(4)}, Δ=${metrics.henrici.toPrecision(3)}`, 8, 14);
}

function runSpectrum() {
  guard($("spectrum-out"), () => {
    const v = JSON.parse(spectrum(...graph()));
    drawSpectrum($("spec-cycle"), v.cycle, "#1f5fbf");
    drawSpectrum($("spec-perturbed"), v.perturbed, "#c0392b");
    const row = (m) => `${m.graph.padEnd(10)} edges=${m.edges} α=${m.alpha.toPrecision(4)} δ=${m.delta.toPrecision(4)} Δ=${m.henrici.toPrecision(4)} κ=${m.kappa.toPrecision(4)} dc=${m.dc_mode}`;
    $("spectrum-out").textContent = [row(v.cycle), row(v.perturbed)].join("\n");
  });
}

function runSweep() {
  guard($("sweep-out"), () => {
    const [n, p, w, seed] = graph();
    const v = JSON.parse(noise_sweep(n, p, w, num("k"), num("trials"), seed));
    const lx = v.sigmas.map(Math.log10);
    const all = [...v.cycle, ...v.perturbed].map(Math.log10);
    const f = frame($("sweep"), Math.min(...lx), Math.max(...lx), Math.min(...all), Math.max(...all));
    for (const [ys, color] of [[v.cycle, "#1f5fbf"], [v.perturbed, "#c0392b"]]) {
      f.ctx.strokeStyle = color;
      f.ctx.beginPath();
      ys.forEach((y, i) => (i ? f.ctx.lineTo : f.ctx.moveTo).call(f.ctx, f.x(lx[i]), f.y(Math.log10(y))));
      f.ctx.stroke();
    }
    f.ctx.fillStyle = "#000";
    f.ctx.fillText("log10 mean relative error vs log10 σ (blue: cycle, red: perturbed)", 8, 14);
    $("sweep-out").textContent =
      `κ cycle = ${v.kappa_cycle.toPrecision(4)}, κ perturbed = ${v.kappa_perturbed.toPrecision(4)}\n` +
      v.sigmas.map((s, i) => `σ=${s}  cycle=${v.cycle[i].toExponential(3)}  perturbed=${v.perturbed[i].toExponential(3)}`).join("\n");
  });
}

function runSampling() {
  guard($("sampling-out"), () => {
    const [n, p, w, seed] = graph();
    const v = JSON.parse(sampling_comparison(n, p, w, seed, num("sk"), num("sm"), num("draws")));
    const g = v.random_gammas;
    const top = Math.max(v.greedy_gamma, ...g) * 1.05;
    const f = frame($("gammas"), 0, g.length, 0, top);
    f.ctx.fillStyle = "#888";
    g.forEach((y, i) => f.ctx.fillRect(f.x(i), f.y(y), Math.max(1, f.x(1) - f.x(0) - 1), f.y(0) - f.y(y)));
    f.ctx.strokeStyle = "#c0392b";
    f.ctx.beginPath();
    f.ctx.moveTo(f.x(0), f.y(v.greedy_gamma));
    f.ctx.lineTo(f.x(g.length), f.y(v.greedy_gamma));
    f.ctx.stroke();
    f.ctx.fillStyle = "#000";
    f.ctx.fillText("sorted γ of random sets (grey) and greedy γ (red)", 8, 14);
    const beaten = g.filter((x) => x > v.greedy_gamma).length;
    $("sampling-out").textContent =
      `greedy set ${JSON.stringify(v.greedy_set)}, γ = ${v.greedy_gamma.toPrecision(5)}\n` +
      `random median γ = ${g[Math.floor(g.length / 2)].toPrecision(5)}; ${beaten}/${g.length} random sets beat greedy`;
  });
}

await init();
$("run-spectrum").onclick = runSpectrum;
$("run-sweep").onclick = runSweep;
$("run-sampling").onclick = runSampling;
runSpectrum();
