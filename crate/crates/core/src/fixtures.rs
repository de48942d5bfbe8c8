//! Bundled example algebras.

/// Eight-cycle with six overlapping length-4 relations and two pendant arrows.
pub const EIGHT_CYCLE: &str = include_str!("../fixtures/f1_eight_cycle.dsl");
/// Three-cycle with length-4 relations.
pub const TRIANGLE_LONG: &str = include_str!("../fixtures/f2_triangle_long.dsl");
/// Three-cycle with all length-2 compositions zero.
pub const TRIANGLE_GENTLE: &str = include_str!("../fixtures/f3_triangle_gentle.dsl");
/// A single arrow.
pub const SINGLE_ARROW: &str = include_str!("../fixtures/f4_single_arrow.dsl");
/// Two parallel arrows.
pub const KRONECKER: &str = include_str!("../fixtures/f5_kronecker.dsl");
/// Linear quiver with four vertices and two zero relations.
pub const LINEAR_A4: &str = include_str!("../fixtures/f6_linear_a4.dsl");
/// Disjoint union of the gentle triangle and the Kronecker quiver.
pub const TRIANGLE_AND_KRONECKER: &str = include_str!("../fixtures/f7_triangle_and_kronecker.dsl");

/// Every bundled fixture with its short name.
pub const ALL: [(&str, &str); 7] = [
    ("eight-cycle", EIGHT_CYCLE),
    ("triangle-long", TRIANGLE_LONG),
    ("triangle-gentle", TRIANGLE_GENTLE),
    ("single-arrow", SINGLE_ARROW),
    ("kronecker", KRONECKER),
    ("linear-a4", LINEAR_A4),
    ("triangle-and-kronecker", TRIANGLE_AND_KRONECKER),
];
