use pyo3::prelude::*;
#[pymodule]
fn ironmark_py(_m: &Bound<'_, PyModule>) -> PyResult<()> { Ok(()) }
