import init, { chain_curves, bernoulli, compare } from "./pkg/trigbounds_web.js";

const COLORS = ["#1f77b4", "#d62728", "#222", "#2ca02c", "#9467bd"];
// Upper ends of the alpha constraint per chain; pi-form chains ignore alpha.
const ALPHA_LIMIT = { C1: Math.PI / 2, C2: Math.PI / 2, C4: Math.PI, C6: Math.PI / 2 };

const $ = (id) => document.getElementById(id);

function plot(canvas, xs, series, refLine) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  const ys = series.flatMap((s) => s.values.filter((v) => v !== null && Number.isFinite(v)));
  if (refLine !== undefined) ys.push(refLine);
  let lo = Math.min(...ys), hi = Math.max(...ys);
  if (hi - lo < 1e-300) { lo -= 1; hi += 1; }
  const x0 = xs[0], x1 = xs[xs.length - 1];
  const px = (x) => pad + ((x - x0) / (x1 - x0)) * (w - 2 * pad);
  const py = (y) => h - pad - ((y - lo) / (hi - lo)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px monospace";
  ctx.fillText(hi.toPrecision(6), 2, pad - 4);
  ctx.fillText(lo.toPrecision(6), 2, h - pad + 14);
  ctx.fillText(x0.toPrecision(4), pad, h - 8);
  ctx.fillText(x1.toPrecision(4), w - pad - 50, h - 8);
  if (refLine !== undefined) {
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(pad, py(refLine));
    ctx.lineTo(w - pad, py(refLine));
    ctx.stroke();
    ctx.setLineDash([]);
  }
  series.forEach((s, i) => {
    ctx.strokeStyle = COLORS[i % COLORS.length];
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    let pen = false;
    s.values.forEach((y, k) => {
      if (y === null || !Number.isFinite(y)) { pen = false; return; }
      if (pen) ctx.lineTo(px(xs[k]), py(y)); else ctx.moveTo(px(xs[k]), py(y));
      pen = true;
    });
    ctx.stroke();
  });
}

function drawChain() {
  const chain = $("chain").value;
  const variant = $("variant").value;
  const limit = ALPHA_LIMIT[chain];
  const alpha = limit ? Number($("alpha").value) * limit : undefined;
  $("alpha-out").textContent = limit ? alpha.toFixed(4) : "n/a";
  try {
    const data = JSON.parse(chain_curves(chain, variant, alpha, 600));
    const series = data.curves.map((c) => ({ label: c.label, values: c.ratio }));
    plot($("chain-plot"), data.xs, series, 1);
    $("chain-legend").innerHTML = series
      .map((s, i) => `<span style="color:${COLORS[i % COLORS.length]}">■ ${s.label}</span>`)
      .join("");
    $("chain-status").className = data.violations ? "mono bad" : "mono";
    $("chain-status").textContent = `${data.chain} ${data.variant}, target ${data.target}: ` +
      (data.violations ? `${data.violations} grid points out of order` : "ordered at every grid point");
  } catch (e) {
    $("chain-status").className = "mono bad";
    $("chain-status").textContent = String(e);
  }
}

function drawTriple() {
  const u = Number($("u").value), v = Number($("v").value);
  $("u-out").textContent = u.toFixed(3);
  $("v-out").textContent = v.toFixed(3);
  try {
    const t = JSON.parse(bernoulli(u, v));
    const row = (name, val, enc) =>
      `<tr><th>${name}</th><td>${val.toPrecision(17)}</td><td>[${enc[0].toPrecision(17)}, ${enc[1].toPrecision(17)}]</td></tr>`;
    $("triple").innerHTML = row("left", t.left, t.left_enclosure) +
      row("middle", t.mid, t.mid_enclosure) + row("right", t.right, t.right_enclosure);
    $("triple-status").textContent = t.ordering_certified
      ? "ordering certified by the enclosures"
      : "enclosures overlap (equality case or below resolution)";
  } catch (e) {
    $("triple-status").textContent = String(e);
  }
}

function runCompare() {
  const [lo, hi] = $("domain").value.split(",").map(Number);
  const alphaText = $("cmp-alpha").value.trim();
  const alpha = alphaText === "" ? undefined : Number(alphaText);
  try {
    const r = JSON.parse(compare($("bound-a").value, $("bound-b").value, lo, hi, alpha, 800));
    const xs = r.points.map((p) => p.x);
    plot($("cmp-plot"), xs, [{ label: "advantage", values: r.points.map((p) => p.advantage) }], 0);
    const cross = r.crossovers.length ? ` crossovers at ${r.crossovers.map((c) => c.toFixed(10)).join(", ")}` : "";
    $("cmp-status").className = "mono";
    $("cmp-status").textContent = `max |advantage| ${r.max_log_gap.toExponential(4)}, mean ${r.mean_log_gap.toExponential(4)}.${cross}`;
  } catch (e) {
    $("cmp-status").className = "mono bad";
    $("cmp-status").textContent = String(e);
  }
}

await init();
for (const id of ["chain", "variant", "alpha"]) $(id).addEventListener("input", drawChain);
for (const id of ["u", "v"]) $(id).addEventListener("input", drawTriple);
$("run-compare").addEventListener("click", runCompare);
drawChain();
drawTriple();
runCompare();
