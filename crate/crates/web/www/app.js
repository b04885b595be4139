import init, { analyse, grid_problem, random_problem_text, verify } from "./pkg/panachee_web.js";

const $ = (id) => document.getElementById(id);

function show(json) {
  const r = JSON.parse(json);
  const status = $("status");
  if (r.error) {
    status.className = "bad";
    status.textContent = r.line ? `line ${r.line}, column ${r.col}: ${r.error}` : r.error;
    $("result").textContent = "";
    return;
  }
  const ob = r.report.obstruction;
  const t = r.report.torsor;
  if (ob.is_zero) {
    status.className = "ok";
    status.textContent = `Completable. ${t.size} solution class(es); certificate ${r.verified ? "verified" : "FAILED"}.`;
  } else {
    status.className = "bad";
    status.textContent = `Obstructed: class ${JSON.stringify(ob.coords)} in Ext^2(Q, P) with invariants ${JSON.stringify(ob.group_invariants)}.`;
  }
  $("result").textContent = JSON.stringify(r.report, null, 1);
  $("certificate").value = r.certificate ?? "";
  $("checks").replaceChildren();
}

function runAnalysis() {
  show(analyse($("source").value));
}

function loadGrid() {
  let bits = 0;
  for (const box of document.querySelectorAll("input[data-bit]")) {
    if (box.checked) bits |= 1 << Number(box.dataset.bit);
  }
  $("source").value = grid_problem(bits);
  runAnalysis();
}

function runVerify() {
  const r = JSON.parse(verify($("certificate").value));
  const list = $("checks");
  list.replaceChildren();
  if (r.error) {
    const li = document.createElement("li");
    li.className = "fail";
    li.textContent = r.error;
    list.append(li);
    return;
  }
  for (const c of r.checks) {
    const li = document.createElement("li");
    li.className = c.passed ? "" : "fail";
    li.textContent = `${c.passed ? "ok" : "FAIL"}  ${c.name}${c.detail ? ": " + c.detail : ""}`;
    list.append(li);
  }
}

await init();
for (const box of document.querySelectorAll("input[data-bit]")) box.addEventListener("change", loadGrid);
$("analyse").addEventListener("click", runAnalysis);
$("verify").addEventListener("click", runVerify);
$("random").addEventListener("click", () => {
  $("source").value = random_problem_text(Number($("ring").value), Number($("seed").value));
  runAnalysis();
});
loadGrid();
