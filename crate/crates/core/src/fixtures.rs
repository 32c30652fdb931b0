//! Named lattices used throughout the tests and documentation, as `.lat`
//! source text.

pub const M3: &str = include_str!("../fixtures/M3.lat");
pub const CHAIN3: &str = include_str!("../fixtures/CHAIN3.lat");
pub const GRID23: &str = include_str!("../fixtures/GRID23.lat");
pub const OBSTRUCT9: &str = include_str!("../fixtures/OBSTRUCT9.lat");
pub const KITE7: &str = include_str!("../fixtures/KITE7.lat");
pub const KITE7D: &str = include_str!("../fixtures/KITE7D.lat");
pub const LADDER7: &str = include_str!("../fixtures/LADDER7.lat");
pub const LADDER8: &str = include_str!("../fixtures/LADDER8.lat");

/// Every fixture as `(name, text)`.
pub const ALL: [(&str, &str); 8] = [
    ("M3", M3),
    ("CHAIN3", CHAIN3),
    ("GRID23", GRID23),
    ("OBSTRUCT9", OBSTRUCT9),
    ("KITE7", KITE7),
    ("KITE7D", KITE7D),
    ("LADDER7", LADDER7),
    ("LADDER8", LADDER8),
];
