macro_rules! example {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(hodge_analysis, "hodge_analysis.rs");
example!(period_formulas, "period_formulas.rs");
example!(invariant_construction, "invariant_construction.rs");
example!(equivariance_check, "equivariance_check.rs");
example!(theorem_verification, "theorem_verification.rs");
example!(exponent_discovery, "exponent_discovery.rs");

#[test]
fn examples_run() {
    hodge_analysis::run_example().expect("hodge analysis");
    period_formulas::run_example().expect("period formulas");
    invariant_construction::run_example().expect("invariant construction");
    equivariance_check::run_example().expect("equivariance check");
    theorem_verification::run_example().expect("theorem verification");
    exponent_discovery::run_example().expect("exponent discovery");
}
