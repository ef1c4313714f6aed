//! Runs in its own process: the budget is global.

use polar_cli::{run, EXIT_ERROR, EXIT_OK};

#[test]
fn environment_budget_overrides_flag() {
    let input = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/problems/example3_5.json");
    std::env::set_var("POLAR_BUDGET", "1");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["polar", "polar", "--input", input, "--budget", "1000000"], &mut out, &mut err);
    assert_eq!(code, EXIT_ERROR);
    assert!(String::from_utf8(err).unwrap().contains("budget"));

    std::env::remove_var("POLAR_BUDGET");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["polar", "polar", "--input", input, "--budget", "1000000"], &mut out, &mut err);
    assert_eq!(code, EXIT_OK, "{}", String::from_utf8(err).unwrap());
}
