import init, { generate, solve, witness, terminals } from "./pkg/treehub_web.js";

const $ = (id) => document.getElementById(id);

// "5/2" or "3" as a float, for line widths only
function approx(text) {
  const [n, d] = text.split("/");
  return d === undefined ? Number(n) : Number(n) / Number(d);
}

function layout(nodes) {
  // terminals on an outer ring, everything else inside
  const w = $("view").width, h = $("view").height;
  const cx = w / 2, cy = h / 2;
  const outer = nodes.filter((n) => n.terminal !== null);
  const inner = nodes.filter((n) => n.terminal === null);
  const pos = new Map();
  outer.forEach((n, i) => {
    const a = (2 * Math.PI * i) / outer.length - Math.PI / 2;
    pos.set(n, [cx + 0.42 * w * Math.cos(a), cy + 0.42 * h * Math.sin(a)]);
  });
  inner.forEach((n, i) => {
    const a = (2 * Math.PI * i) / Math.max(inner.length, 1);
    const r = inner.length === 1 ? 0 : 0.22;
    pos.set(n, [cx + r * w * Math.cos(a), cy + r * h * Math.sin(a)]);
  });
  return nodes.map((n) => pos.get(n));
}

function draw(view) {
  const ctx = $("view").getContext("2d");
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  const p = layout(view.nodes);
  const maxAlloc = Math.max(1, ...view.edges.map((e) => approx(e.allocation)));
  ctx.font = "12px system-ui";
  for (const e of view.edges) {
    const [x1, y1] = p[e.u], [x2, y2] = p[e.v];
    const a = approx(e.allocation);
    ctx.strokeStyle = a > 0 ? "#2a6fdb" : "#ccc";
    ctx.lineWidth = a > 0 ? 1 + 7 * (a / maxAlloc) : 1;
    ctx.beginPath(); ctx.moveTo(x1, y1); ctx.lineTo(x2, y2); ctx.stroke();
    ctx.fillStyle = "#555";
    const tag = e.q_star === null ? `c=${e.cost} u=${e.allocation}` : `c=${e.cost} q*=${e.q_star}`;
    ctx.fillText(tag, (x1 + x2) / 2 + 4, (y1 + y2) / 2 - 4);
  }
  view.nodes.forEach((n, i) => {
    const [x, y] = p[i];
    ctx.fillStyle = n.terminal !== null ? "#222" : "#fff";
    ctx.strokeStyle = "#222"; ctx.lineWidth = 1.5;
    ctx.beginPath(); ctx.arc(x, y, 9, 0, 2 * Math.PI); ctx.fill(); ctx.stroke();
    if (n.hubs.length) {
      ctx.strokeStyle = "#d9480f"; ctx.lineWidth = 3;
      ctx.beginPath(); ctx.arc(x, y, 14, 0, 2 * Math.PI); ctx.stroke();
    }
    ctx.fillStyle = "#000";
    const name = n.terminal !== null ? `${n.label} [${n.terminal}]` : n.label;
    ctx.fillText(n.hubs.length ? `${name} {${n.hubs.join(",")}}` : name, x + 16, y + 4);
  });
}

function show(json) {
  const view = JSON.parse(json);
  draw(view);
  $("out").textContent = [...view.log, "", view.solution].join("\n");
  $("status").className = "";
  $("status").textContent = `cost ${view.cost} (${view.cost_decimal.toFixed(6)}), verification ${view.verified ? "passed" : "FAILED"}`;
}

function guard(f) {
  try {
    f();
  } catch (e) {
    $("status").className = "err";
    $("status").textContent = String(e.message ?? e);
  }
}

function refreshRoots() {
  const sel = $("root");
  sel.length = 1;
  try {
    for (const t of terminals($("instance").value).split(" ")) sel.add(new Option(t, t));
  } catch (_) {
    // the instance text is being edited
  }
}

await init();

$("gen").onclick = () => guard(() => {
  $("instance").value = generate(+$("seed").value, +$("nodes").value, +$("terms").value, $("shape").value, $("treenet").checked);
  refreshRoots();
  show(solve($("instance").value));
});
$("solve").onclick = () => guard(() => show(solve($("instance").value)));
$("witness").onclick = () => guard(() => show(witness($("instance").value, $("root").value)));
$("instance").onchange = refreshRoots;
$("gen").click();
