use pyo3::ffi::c_str;
use pyo3::prelude::*;
use saw_py::saw_py;

#[test]
fn module_runs_in_an_embedded_interpreter() {
    pyo3::append_to_inittab!(saw_py);
    Python::initialize();
    Python::attach(|py| {
        let code = c_str!(
            r#"
import saw_py
g = saw_py.Graph.catalog("square-octagon")
assert g.degree == 3
assert g.count_saws(10) == [1, 3, 6, 12, 22, 42, 80, 152, 284, 536, 988]
q = saw_py.Quotient(saw_py.Graph.catalog("zd:1"), sublattice="3")
c = saw_py.certify_ratio(q, 16, mu_exact=1.0, workers=2)
assert c.status == "certified" and c.verify() == []
assert c.params == (2, 4, 2)
"#
        );
        py.run(code, None, None).unwrap();
    });
}
