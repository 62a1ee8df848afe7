import init, { encode, fejer, solve } from "./pkg/qdict_gas_demo.js";

const examples = {
  portfolio: {
    variables: ["x0", "x1", "x2"],
    objective: [
      { vars: ["x0", "x2"], coeff: -2 },
      { vars: ["x1", "x2"], coeff: -1 },
      { vars: ["x0"], coeff: -1 },
      { vars: ["x1"], coeff: 2 },
      { vars: ["x2"], coeff: -3 },
    ],
  },
  two: {
    variables: ["x0", "x1"],
    objective: [
      { vars: [], coeff: -2 },
      { vars: ["x0"], coeff: 1 },
      { vars: ["x1"], coeff: 1 },
    ],
  },
};
examples.hamming = {
  ...examples.portfolio,
  constraints: [{
    terms: [
      { vars: ["x0"], coeff: 1 },
      { vars: ["x1"], coeff: 1 },
      { vars: ["x2"], coeff: 1 },
      { vars: [], coeff: -2 },
    ],
    relation: "<0",
  }],
};

const $ = (id) => document.getElementById(id);

function bars(canvas, items, highlight = () => false) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  if (items.length === 0) return;
  const pad = 30;
  const w = (width - pad) / items.length;
  const max = Math.max(...items.map((b) => b.value), 1e-12);
  ctx.font = "10px sans-serif";
  ctx.textAlign = "center";
  items.forEach((b, i) => {
    const h = (height - 2 * pad) * (b.value / max);
    const x = pad + i * w;
    ctx.fillStyle = highlight(b) ? "#c33" : "#37a";
    ctx.fillRect(x + 1, height - pad - h, Math.max(w - 2, 1), h);
    ctx.fillStyle = "#000";
    if (w > 14) ctx.fillText(b.label, x + w / 2, height - pad + 12);
    if (w > 24) ctx.fillText(b.value.toFixed(3), x + w / 2, height - pad - h - 3);
  });
}

function guard(fn) {
  return () => {
    $("error").textContent = "";
    try {
      fn();
    } catch (e) {
      $("error").textContent = String(e.message ?? e);
    }
  };
}

const rowBar = (r) => ({ label: `${r.key_bits}|${r.decoded_value}`, value: r.probability, row: r });

function runEncode() {
  const view = JSON.parse(encode($("problem").value, Number($("enc-y").value), Number($("enc-m").value)));
  $("enc-info").textContent = `n = ${view.n}, m = ${view.m}; label is key bits (x0 first) | f(x) - y`;
  bars($("enc-chart"), view.rows.map(rowBar), (b) => b.row.decoded_value < 0);
}

let lastRun = null;

function showIteration() {
  if (!lastRun) return;
  const i = Number($("gas-iter").value);
  const it = lastRun.trace.iterations[i - 1];
  $("gas-iter-label").textContent =
    `y = ${it.threshold}, r = ${it.rotations}, measured ${it.key.toString(2)} (f = ${it.objective})${it.accepted ? ", accepted" : ""}`;
  const rows = lastRun.histograms.filter((r) => r.iteration === i);
  bars($("gas-chart"), rows.map(rowBar), (b) => b.row.decoded_value < 0);
}

function runSolve() {
  lastRun = JSON.parse(solve(
    $("problem").value,
    Number($("gas-seed").value),
    Number($("gas-lambda").value),
    Number($("gas-patience").value),
  ));
  const t = lastRun.trace;
  $("gas-iter").max = t.iterations.length;
  $("gas-iter").value = 1;
  $("gas-log").textContent =
    t.iterations
      .map((it) => `#${it.index} y=${it.threshold} k=${it.k.toFixed(2)} r=${it.rotations} f=${it.objective}${it.accepted ? " *" : ""}`)
      .join("\n") + `\nbest ${t.best_value} at ${lastRun.best_assignment}`;
  showIteration();
}

function runFejer() {
  const a = Number($("fej-a").value);
  const view = JSON.parse(fejer(a, Number($("fej-m").value)));
  $("fej-info").textContent = `mass on the two nearest outcomes: ${view.two_nearest_mass.toFixed(4)}`;
  const size = view.bars.length;
  const near = new Set([Math.floor(a), Math.ceil(a)].map((v) => ((v % size) + size) % size));
  bars($("fej-chart"), view.bars, (b) => near.has(Number(b.label)));
}

await init();
const setExample = (name) => {
  $("problem").value = JSON.stringify(examples[name], null, 2);
};
document.querySelectorAll("[data-example]").forEach((b) =>
  b.addEventListener("click", () => setExample(b.dataset.example)));
setExample("portfolio");
$("enc-run").addEventListener("click", guard(runEncode));
$("gas-run").addEventListener("click", guard(runSolve));
$("gas-iter").addEventListener("input", guard(showIteration));
for (const id of ["fej-a", "fej-m"]) $(id).addEventListener("input", guard(runFejer));
guard(runEncode)();
guard(runFejer)();
