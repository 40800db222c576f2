//! Python bindings for `rootfold`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rootfold::action::{make_action, ActionGroup, DatumAction, FiniteGroup, Generator};
use rootfold::cli::{parse_datum, selftest_report, summarize_fold, type_label, Role};
use rootfold::folding::{restrict, RestrictedDatum};
use rootfold::mat::Mat;
use rootfold::rootdatum::{from_cartan_type, weyl_order_of, BasedRootDatum, RootDatum};
use rootfold::twist::{diagram_automorphism, equivariant_isomorphic, h_gamma_image, star_action, Z1_BOUND};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn square(rows: &[Vec<i64>], n: usize) -> PyResult<Mat> {
    if rows.len() != n {
        return Err(err(format!("expected a {n}x{n} matrix")));
    }
    Mat::from_rows(rows, n).ok_or_else(|| err(format!("expected a {n}x{n} matrix")))
}

/// A root datum, optionally with a chosen base.
#[pyclass(name = "RootDatum", module = "rootfold", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRootDatum {
    datum: RootDatum,
    based: Option<BasedRootDatum>,
}

impl PyRootDatum {
    fn from_based(b: BasedRootDatum) -> Self {
        Self { datum: b.datum().clone(), based: Some(b) }
    }
}

#[pymethods]
impl PyRootDatum {
    #[new]
    #[pyo3(signature = (rank, roots, coroots, pairing=None, base=None))]
    fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        pairing: Option<Vec<Vec<i64>>>,
        base: Option<Vec<usize>>,
    ) -> PyResult<Self> {
        let pairing = pairing.map(|p| square(&p, rank)).transpose()?;
        let datum = RootDatum::with_pairing(rank, roots, coroots, pairing).map_err(err)?;
        datum.verify_axioms().into_result().map_err(err)?;
        let based = base.map(|b| BasedRootDatum::new(datum.clone(), b)).transpose().map_err(err)?;
        Ok(Self { datum, based })
    }

    /// A based datum from a type string such as `"A2:sc"` or `"B2:ad x A1:sc"`.
    #[staticmethod]
    fn from_cartan_type(spec: &str) -> PyResult<Self> {
        from_cartan_type(spec).map(Self::from_based).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.datum.rank()
    }

    #[getter]
    fn num_roots(&self) -> usize {
        self.datum.num_roots()
    }

    #[getter]
    fn roots(&self) -> Vec<Vec<i64>> {
        self.datum.roots().to_vec()
    }

    #[getter]
    fn coroots(&self) -> Vec<Vec<i64>> {
        self.datum.coroots().to_vec()
    }

    /// Indices of the simple roots, if a base was chosen.
    #[getter]
    fn base(&self) -> Option<Vec<usize>> {
        self.based.as_ref().map(|b| b.base().to_vec())
    }

    #[getter]
    fn is_reduced(&self) -> bool {
        self.datum.is_reduced()
    }

    fn pair(&self, x: Vec<i64>, coweight: Vec<i64>) -> PyResult<i64> {
        if x.len() != self.datum.rank() || coweight.len() != self.datum.rank() {
            return Err(err("vectors must have length rank"));
        }
        Ok(self.datum.pair(&x, &coweight))
    }

    fn type_label(&self) -> PyResult<String> {
        type_label(&self.datum).map_err(err)
    }

    fn cartan_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.require_base()?.cartan_matrix())
    }

    fn weyl_order(&self) -> Option<u128> {
        weyl_order_of(&self.datum)
    }

    /// Character matrix of the diagram automorphism permuting the simple
    /// roots by `perm`, or `None` if there is none.
    fn diagram_automorphism(&self, perm: Vec<usize>) -> PyResult<Option<Vec<Vec<i64>>>> {
        Ok(diagram_automorphism(self.require_base()?, &perm).map(|g| g.chars.to_rows()))
    }

    fn __repr__(&self) -> String {
        let label = type_label(&self.datum).unwrap_or_else(|_| "unknown".into());
        format!("RootDatum({label}, rank {}, {} roots)", self.datum.rank(), self.datum.num_roots())
    }
}

impl PyRootDatum {
    fn require_base(&self) -> PyResult<&BasedRootDatum> {
        self.based.as_ref().ok_or_else(|| err("this datum has no base"))
    }
}

/// A finite group acting on a root datum by automorphisms.
#[pyclass(name = "Action", module = "rootfold", frozen, from_py_object)]
#[derive(Clone)]
struct PyAction {
    action: DatumAction,
}

#[pymethods]
impl PyAction {
    /// The cyclic group of the given order generated by `generator`, or the
    /// group generated by `generators` when `order` is omitted.
    #[new]
    #[pyo3(signature = (datum, generators, order=None, based=true))]
    fn new(datum: &PyRootDatum, generators: Vec<Vec<Vec<i64>>>, order: Option<usize>, based: bool) -> PyResult<Self> {
        let n = datum.datum.rank();
        let base = if based { Some(datum.require_base()?.base()) } else { None };
        let (group, labels): (ActionGroup, Vec<String>) = match order {
            Some(k) => {
                if generators.len() != 1 {
                    return Err(err("a cyclic group takes exactly one generator"));
                }
                let label = if k == 1 { "e" } else { "g" };
                (ActionGroup::Given(FiniteGroup::cyclic(k)), vec![label.into()])
            }
            None => (ActionGroup::Closure, (0..generators.len()).map(|i| format!("g{i}")).collect()),
        };
        let gens = generators
            .iter()
            .zip(labels)
            .map(|(m, l)| Ok(Generator::new(square(m, n)?, l)))
            .collect::<PyResult<Vec<_>>>()?;
        make_action(&datum.datum, base, &gens, group).map(|action| Self { action }).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.action.group().order()
    }

    #[getter]
    fn element_names(&self) -> Vec<String> {
        self.action.group().names().to_vec()
    }

    /// Character matrices of the group elements, in element order.
    #[getter]
    fn images(&self) -> Vec<Vec<Vec<i64>>> {
        self.action.images().iter().map(|g| g.chars.to_rows()).collect()
    }

    #[getter]
    fn stabilizes_base(&self) -> bool {
        self.action.base().is_some() && self.action.stabilizes_base()
    }

    fn fixed_weyl_order(&self) -> PyResult<usize> {
        self.action.fixed_weyl().map(|w| w.order()).map_err(err)
    }

    /// The base-preserving action `σ★` and the cocycle values `c(σ)`.
    fn star(&self, datum: &PyRootDatum) -> PyResult<(PyAction, Vec<Vec<Vec<i64>>>)> {
        let (star, c) = star_action(&self.action, datum.require_base()?.base()).map_err(err)?;
        let values = c.values.iter().map(|v| v.chars.to_rows()).collect();
        Ok((PyAction { action: star }, values))
    }

    fn __repr__(&self) -> String {
        format!("Action(order {}, rank {})", self.action.group().order(), self.action.datum().rank())
    }
}

/// The restricted datum of a base-preserving action.
#[pyclass(name = "Fold", module = "rootfold", frozen)]
struct PyFold {
    restricted: RestrictedDatum,
    #[pyo3(get)]
    source_type: String,
    #[pyo3(get)]
    restricted_type: String,
    #[pyo3(get)]
    num_roots: usize,
    #[pyo3(get)]
    reduced: bool,
    #[pyo3(get)]
    restricted_weyl_order: usize,
    #[pyo3(get)]
    fixed_weyl_order: usize,
    #[pyo3(get)]
    invariant_positive_systems: usize,
}

#[pymethods]
impl PyFold {
    #[getter]
    fn datum(&self) -> PyRootDatum {
        PyRootDatum::from_based(self.restricted.based())
    }

    /// For each restricted root, the indices of the roots restricting to it.
    #[getter]
    fn fibers(&self) -> Vec<Vec<usize>> {
        self.restricted.fibers().to_vec()
    }

    /// Character-lattice image of a source vector.
    fn project(&self, x: Vec<i64>) -> PyResult<Vec<i64>> {
        if x.len() != self.restricted.source().datum().rank() {
            return Err(err("vector must have length rank"));
        }
        Ok(self.restricted.coinvariants().project(&x))
    }

    fn reduced_subdatum(&self, char_is_two: bool) -> PyRootDatum {
        let d = self.restricted.reduced_subdatum(char_is_two);
        PyRootDatum { datum: d, based: None }
    }

    fn __repr__(&self) -> String {
        format!("Fold({} -> {}, {} roots)", self.source_type, self.restricted_type, self.num_roots)
    }
}

/// Restricts a datum along a base-preserving action.
#[pyfunction]
#[pyo3(signature = (gamma, commuting=Vec::new()))]
fn fold(gamma: &PyAction, commuting: Vec<PyAction>) -> PyResult<PyFold> {
    let commuting: Vec<DatumAction> = commuting.into_iter().map(|a| a.action).collect();
    let restricted = restrict(&gamma.action, &commuting).map_err(err)?;
    let s = summarize_fold(&restricted, true).map_err(err)?;
    Ok(PyFold {
        restricted,
        source_type: s.source_type,
        restricted_type: s.restricted_type,
        num_roots: s.num_roots,
        reduced: s.reduced,
        restricted_weyl_order: s.restricted_weyl,
        fixed_weyl_order: s.fixed_weyl,
        invariant_positive_systems: s.invariant_systems.unwrap_or(0),
    })
}

/// Counts `(cocycles, classes in H¹, classes in the image in H¹(G, Aut_Γ))`.
#[pyfunction]
fn h1(gamma: &PyAction, galois: &PyAction) -> PyResult<(usize, usize, usize)> {
    let h = h_gamma_image(&gamma.action, &galois.action, Z1_BOUND).map_err(err)?;
    Ok((h.h1.cocycles.len(), h.h1.num_classes(), h.image.num_classes()))
}

/// A map intertwining both pairs of actions, or `None`.
#[pyfunction]
fn equivariant_isomorphism(
    a: &PyRootDatum,
    a_actions: Vec<PyAction>,
    b: &PyRootDatum,
    b_actions: Vec<PyAction>,
) -> PyResult<Option<Vec<Vec<i64>>>> {
    let xs: Vec<&DatumAction> = a_actions.iter().map(|x| &x.action).collect();
    let ys: Vec<&DatumAction> = b_actions.iter().map(|x| &x.action).collect();
    equivariant_isomorphic(&a.datum, &xs, &b.datum, &ys)
        .map(|m| m.map(|f| f.chars.to_rows()))
        .map_err(err)
}

/// Parses a datum document. Returns the datum and its actions by role.
#[pyfunction]
fn load_datum(text: &str) -> PyResult<(PyRootDatum, Option<PyAction>, Option<PyAction>)> {
    let doc = parse_datum(text).map_err(err)?;
    let pick = |role| doc.action(role).map(|a| PyAction { action: a.action.clone() });
    let datum = PyRootDatum { datum: doc.datum.clone(), based: doc.based.clone() };
    Ok((datum, pick(Role::Gamma), pick(Role::Galois)))
}

/// Runs the built-in suites. Returns the report and whether all passed.
#[pyfunction]
fn selftest() -> (String, bool) {
    selftest_report()
}

#[pymodule(name = "rootfold")]
fn rootfold_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyAction>()?;
    m.add_class::<PyFold>()?;
    m.add_function(wrap_pyfunction!(fold, m)?)?;
    m.add_function(wrap_pyfunction!(h1, m)?)?;
    m.add_function(wrap_pyfunction!(equivariant_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(load_datum, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
