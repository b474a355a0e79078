import init, { structures, run_and_verify, verify_text, finite_scan } from "./pkg/nonrev_web.js";

const SVG = "http://www.w3.org/2000/svg";
const SIZE = 460;
const PAD = 24;
const INDEX_CAP = 300;

const $ = (id) => document.getElementById(id);

function el(name, attrs = {}, parent = null) {
  const node = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (parent) parent.appendChild(node);
  return node;
}

function showReport(report) {
  const list = $("report");
  list.replaceChildren();
  for (const c of report.checks) {
    const li = document.createElement("li");
    li.className = c.passed ? "ok" : "fail";
    li.textContent = `${c.passed ? "[ok]  " : "[FAIL]"} ${c.name}: ${c.detail}`;
    list.appendChild(li);
  }
  const passed = report.checks.every((c) => c.passed);
  $("result-line").textContent = passed ? "All checks pass." : "Verification failed.";
  $("result-line").className = passed ? "ok" : "fail";
}

function witnessPoints(certText) {
  try {
    const w = JSON.parse(certText).bad_witness;
    return new Set([w.x1, w.x2]);
  } catch {
    return new Set();
  }
}

function draw(drawing, witness) {
  const svg = $("drawing");
  svg.replaceChildren();
  const defs = el("defs", {}, svg);
  const marker = el("marker", { id: "head", viewBox: "0 0 10 10", refX: 9, refY: 5, markerWidth: 5, markerHeight: 5, orient: "auto" }, defs);
  el("path", { d: "M0,0 L10,5 L0,10 z", fill: "#888" }, marker);
  if (!drawing || !drawing.arrows) {
    $("drawing-note").textContent = "";
    return;
  }
  const arrows = drawing.arrows.filter((a) => a.from && a.to);
  if (drawing.planar) {
    const xs = arrows.flatMap((a) => [a.from[0], a.to[0]]);
    const ys = arrows.flatMap((a) => [a.from[1], a.to[1]]);
    const lo = Math.min(...xs, ...ys, 0) - 1;
    const hi = Math.max(...xs, ...ys, 0) + 1;
    const sx = (v) => PAD + ((v - lo) / (hi - lo)) * (SIZE - 2 * PAD);
    const sy = (v) => SIZE - PAD - ((v - lo) / (hi - lo)) * (SIZE - 2 * PAD);
    el("line", { x1: sx(lo), y1: sy(0), x2: sx(hi), y2: sy(0), stroke: "#ccc" }, svg);
    el("line", { x1: sx(0), y1: sy(lo), x2: sx(0), y2: sy(hi), stroke: "#ccc" }, svg);
    for (const a of arrows) {
      const bad = witness.has(a.x);
      el("line", { x1: sx(a.from[0]), y1: sy(a.from[1]), x2: sx(a.to[0]), y2: sy(a.to[1]), stroke: bad ? "#b3141c" : "#bbb", "stroke-width": bad ? 2 : 1, "marker-end": "url(#head)" }, svg);
      const dot = el("circle", { cx: sx(a.from[0]), cy: sy(a.from[1]), r: 3, fill: bad ? "#b3141c" : "#2160c4" }, svg);
      el("title", {}, dot).textContent = `${a.x} -> ${a.y}`;
      el("circle", { cx: sx(a.to[0]), cy: sy(a.to[1]), r: 2.5, fill: "#d9822b" }, svg);
    }
    $("drawing-note").textContent = `${arrows.length} arrows x -> f(x) in the plane, axes through the origin.`;
  } else {
    const shown = arrows.filter((a) => a.from[0] < INDEX_CAP && a.to[0] < INDEX_CAP);
    const s = (v) => PAD + (v / INDEX_CAP) * (SIZE - 2 * PAD);
    el("line", { x1: s(0), y1: SIZE - s(0), x2: s(INDEX_CAP), y2: SIZE - s(INDEX_CAP), stroke: "#eee" }, svg);
    for (const a of shown) {
      const bad = witness.has(a.x);
      const dot = el("circle", { cx: s(a.from[0]), cy: SIZE - s(a.to[0]), r: bad ? 4 : 2.5, fill: bad ? "#b3141c" : "#2160c4" }, svg);
      el("title", {}, dot).textContent = `${a.x} -> ${a.y}`;
    }
    $("drawing-note").textContent =
      `${shown.length} of ${arrows.length} pairs with enumeration index below ${INDEX_CAP}: ` +
      "horizontal is the index of x, vertical the index of f(x).";
  }
}

function fail(message) {
  $("result-line").textContent = message;
  $("result-line").className = "error";
}

function fillStrategies(list) {
  const entry = list.find((s) => s.id === $("structure").value);
  $("strategy").replaceChildren(...entry.strategies.map((id) => new Option(id, id)));
}

async function main() {
  await init();
  const list = JSON.parse(structures());
  $("structure").replaceChildren(...list.map((s) => new Option(s.id, s.id)));
  $("structure").addEventListener("change", () => fillStrategies(list));
  fillStrategies(list);
  $("max-size").replaceChildren(...[0, 1, 2, 3, 4, 5].map((n) => new Option(n, n)));
  $("max-size").value = "4";

  $("run").addEventListener("click", () => {
    const out = JSON.parse(run_and_verify($("structure").value, $("strategy").value, Number($("steps").value)));
    if (out.error) return fail(out.error);
    $("certificate").value = out.certificate;
    showReport(out.report);
    draw(out.drawing, witnessPoints(out.certificate));
  });

  $("verify").addEventListener("click", () => {
    const text = $("certificate").value;
    const out = JSON.parse(verify_text(text));
    if (out.error) return fail(out.error);
    showReport(out.report);
    draw(out.drawing, witnessPoints(text));
  });

  $("scan").addEventListener("click", () => {
    const out = JSON.parse(finite_scan(Number($("max-size").value)));
    const target = $("scan-result");
    if (out.error) {
      target.textContent = out.error;
      return;
    }
    const rows = out.sweep.sizes
      .map((s) => `<tr><td>${s.size}</td><td>${s.posets}</td><td>${s.bijections}</td><td>${s.homomorphic}</td><td>${s.automorphisms}</td><td>${s.bad}</td></tr>`)
      .join("");
    target.innerHTML =
      "<table><tr><th>points</th><th>labeled posets</th><th>bijections</th><th>homomorphic</th><th>automorphisms</th><th>bad</th></tr>" +
      rows + "</table>" +
      `<p class="${out.passed ? "ok" : "fail"}">${out.passed ? "Every bijective homomorphism is an automorphism." : "Found a bad bijection."}</p>`;
  });

  $("run").click();
}

main();
