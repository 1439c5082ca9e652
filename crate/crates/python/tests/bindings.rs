use pyo3::prelude::*;
use pyo3::wrap_pymodule;

#[test]
fn module_round_trip() {
    Python::attach(|py| {
        let module = wrap_pymodule!(pymultibetti::pymultibetti)(py);
        py.import("sys").unwrap().getattr("modules").unwrap().set_item("pymultibetti", module).unwrap();
        let code = c"
import pymultibetti as mb
p = mb.Presentation.monomial_ideal(2, [[2, 0], [1, 1], [0, 2]])
assert p.betti_totals() == [1, 3, 2], p.betti_totals()
assert p.verify_betti()['pass']
assert mb.Presentation.from_json(p.to_json()) == p
assert mb.genex(1, 3).betti_totals() == [1, 3, 3, 1]
assert mb.betti_bound(1, 5, 0, 2) == 10
try:
    mb.betti_bound(1, 5, 0, 1)
    raise SystemExit('index below 2 accepted')
except mb.MultibettiError:
    pass
";
        py.run(code, None, None).unwrap();
    });
}
