use std::fmt::Write as _;

use crate::action::{make_action, ActionGroup, DatumAction, FiniteGroup, Generator};
use crate::error::{Error, Result};
use crate::folding::restrict;
use crate::mat::Mat;
use crate::rootdatum::from_cartan_type;
use crate::twist::{diagram_automorphism, h_gamma_image, Z1_BOUND};

use super::summarize_fold;

struct FoldCase {
    cartan: &'static str,
    /// Image of each simple root under the generator.
    perm: &'static [usize],
    order: usize,
    expected_type: &'static str,
    expected_roots: usize,
    reduced: bool,
}

const FOLDS: &[FoldCase] = &[
    FoldCase { cartan: "A2:sc", perm: &[1, 0], order: 2, expected_type: "BC1", expected_roots: 4, reduced: false },
    FoldCase { cartan: "A4:sc", perm: &[3, 2, 1, 0], order: 2, expected_type: "BC2", expected_roots: 12, reduced: false },
    FoldCase { cartan: "A3:sc", perm: &[2, 1, 0], order: 2, expected_type: "B2/C2", expected_roots: 8, reduced: true },
    FoldCase { cartan: "A5:sc", perm: &[4, 3, 2, 1, 0], order: 2, expected_type: "C3", expected_roots: 18, reduced: true },
    FoldCase { cartan: "D4:sc", perm: &[2, 1, 3, 0], order: 3, expected_type: "G2", expected_roots: 12, reduced: true },
    FoldCase { cartan: "D5:sc", perm: &[0, 1, 2, 4, 3], order: 2, expected_type: "B4", expected_roots: 32, reduced: true },
    FoldCase { cartan: "E6:sc", perm: &[5, 1, 4, 3, 2, 0], order: 2, expected_type: "F4", expected_roots: 48, reduced: true },
    FoldCase { cartan: "A1:sc x A1:sc", perm: &[1, 0], order: 2, expected_type: "A1", expected_roots: 2, reduced: true },
];

/// The based action of `ℤ/order` generated by a diagram automorphism.
fn diagram_action(cartan: &str, perm: &[usize], order: usize) -> Result<DatumAction> {
    let b = from_cartan_type(cartan)?;
    let g = diagram_automorphism(&b, perm).ok_or_else(|| Error::Internal("not a diagram automorphism".into()))?;
    make_action(
        b.datum(),
        Some(b.base()),
        &[Generator::new(g.chars, "g")],
        ActionGroup::Given(FiniteGroup::cyclic(order)),
    )
}

fn fold_line(case: &FoldCase) -> (String, bool) {
    let result = diagram_action(case.cartan, case.perm, case.order)
        .and_then(|a| restrict(&a, &[]))
        .and_then(|r| summarize_fold(&r, true));
    match result {
        Ok(s) => {
            let ok = s.restricted_type == case.expected_type
                && s.num_roots == case.expected_roots
                && s.reduced == case.reduced
                && s.restricted_weyl == s.fixed_weyl
                && s.invariant_systems == Some(s.restricted_weyl);
            (
                format!(
                    "fold {} by ℤ/{}: {}, |Φ̄| = {}, reduced = {}, |W̄| = {}, |W^Γ| = {}, positive systems = {}",
                    s.source_type,
                    case.order,
                    s.restricted_type,
                    s.num_roots,
                    s.reduced,
                    s.restricted_weyl,
                    s.fixed_weyl,
                    s.invariant_systems.unwrap_or(0)
                ),
                ok,
            )
        }
        Err(e) => (format!("fold {} by ℤ/{}: error: {e}", case.cartan, case.order), false),
    }
}

fn h1_line(cartan: &str, galois_matrix: fn(usize) -> Mat, expected: (usize, usize, usize)) -> (String, bool) {
    let run = || -> Result<(usize, usize, usize)> {
        let b = from_cartan_type(cartan)?;
        let d = b.datum();
        let gamma = DatumAction::trivial(d, Some(b.base()));
        let galois = make_action(
            d,
            None,
            &[Generator::new(galois_matrix(d.rank()), "g")],
            ActionGroup::Given(FiniteGroup::cyclic(2)),
        )?;
        let h = h_gamma_image(&gamma, &galois, Z1_BOUND)?;
        Ok((h.h1.cocycles.len(), h.h1.num_classes(), h.image.num_classes()))
    };
    match run() {
        Ok(got) => (
            format!(
                "h1 {cartan} by ℤ/2: {} cocycles, {} classes in H¹(G, W^Γ), {} in the image",
                got.0, got.1, got.2
            ),
            got == expected,
        ),
        Err(e) => (format!("h1 {cartan} by ℤ/2: error: {e}"), false),
    }
}

/// Runs the suites. The report is deterministic.
pub fn selftest_report() -> (String, bool) {
    let mut lines: Vec<(String, bool)> = FOLDS.iter().map(fold_line).collect();
    lines.push(h1_line("A1:sc", Mat::identity, (2, 2, 2)));
    lines.push(h1_line("A2:sc", Mat::identity, (4, 2, 2)));
    let mut out = String::new();
    let passed = lines.iter().filter(|l| l.1).count();
    for (text, ok) in &lines {
        let _ = writeln!(out, "{} {text}", if *ok { "PASS" } else { "FAIL" });
    }
    let _ = writeln!(out, "selftest: {passed}/{} passed", lines.len());
    (out, passed == lines.len())
}
