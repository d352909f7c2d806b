import init, { binary, refine, diagram, corner } from "./pkg/geotype_web.js";

const $ = (id) => document.getElementById(id);

function show(fn) {
  const out = $("out");
  try {
    out.textContent = fn();
    out.className = "";
  } catch (e) {
    out.textContent = String(e);
    out.className = "error";
  }
}

function draw() {
  try {
    $("diagram").innerHTML = diagram($("type").value, $("codes").value);
  } catch (e) {
    $("diagram").textContent = "";
  }
}

await init();
$("binary").onclick = () => show(() => {
  const t = binary($("type").value);
  $("type").value = t;
  draw();
  return t;
});
$("refine").onclick = () => show(() => refine($("type").value, $("codes").value));
$("corner").onclick = () => show(() => corner($("type").value));
$("type").oninput = draw;
$("codes").oninput = draw;
draw();
