//! Problem files shipped with the crate.

use crate::error::Result;
use crate::problem::{load_problem_str, ProblemSpec};

pub const EXAMPLE2_6: &str = include_str!("../problems/example2_6.json");
pub const EXAMPLE3_5: &str = include_str!("../problems/example3_5.json");
pub const REM_MAIN2: &str = include_str!("../problems/rem_main2.json");
pub const TWO_PLANES: &str = include_str!("../problems/two_planes.json");
pub const CUSP: &str = include_str!("../problems/cusp.json");
pub const FAMILY: &str = include_str!("../problems/family.json");

pub const ALL: [(&str, &str); 6] = [
    ("example2_6", EXAMPLE2_6),
    ("example3_5", EXAMPLE3_5),
    ("rem_main2", REM_MAIN2),
    ("two_planes", TWO_PLANES),
    ("cusp", CUSP),
    ("family", FAMILY),
];

pub fn load(name: &str) -> Result<ProblemSpec> {
    let (_, text) = ALL
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| crate::error::Error::Io(format!("no bundled problem `{name}`")))?;
    load_problem_str(text)
}
