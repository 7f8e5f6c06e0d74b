import init, { construct_hopf, check_twist, classify_instance } from "./pkg/qhopf_web.js";

const num = (form, name) => Number(form.querySelector(`[name=${name}]`).value);

function show(form, text, verdict) {
  const out = JSON.parse(text);
  const p = form.querySelector(".verdict");
  if (out.error) {
    p.textContent = `Refused: ${out.error}`;
    p.className = "verdict fail";
  } else {
    const [msg, ok] = verdict(out);
    p.textContent = msg;
    p.className = ok ? "verdict pass" : "verdict fail";
  }
  form.querySelector("pre").textContent = JSON.stringify(out, null, 2);
}

function wire(id, call, verdict) {
  const form = document.getElementById(id);
  form.querySelector("button").addEventListener("click", () => {
    form.querySelector(".verdict").textContent = "computing…";
    // let the label repaint before the synchronous computation
    setTimeout(() => show(form, call(form), verdict), 0);
  });
}

await init();

wire("hopf",
  (f) => construct_hopf(num(f, "m"), num(f, "n"), num(f, "l1"), num(f, "l2"), num(f, "sigma")),
  (r) => [`dimension ${r.dimension}, ${r.mode} check: ${r.passed ? "all axioms hold" : "some check failed"}`, r.passed]);

wire("twist",
  (f) => check_twist(num(f, "mm"), num(f, "nn"), num(f, "a"), num(f, "b"), num(f, "c")),
  (r) => [r.passed ? "d(J) = Φ and the pentagon hold" : "a check failed", r.passed]);

wire("classify",
  (f) => classify_instance(num(f, "m"), num(f, "n"), num(f, "l1"), num(f, "l2"), num(f, "sigma"),
    f.querySelector("[name=twisted]").checked, num(f, "a"), num(f, "b"), num(f, "c")),
  (r) => {
    if (r.case === "none") return [`A(H,J) is not closed (dimension ${r.dim})`, false];
    const what = r.case === "(i)" ? "the Hopf algebra H" : `A(H,J), ${r.genuine ? "genuine" : "twist equivalent to a Hopf algebra"}`;
    return [`case ${r.case}: ${what}, dimension ${r.dim}`, true];
  });
