//! The built-in example corpus: catalogs, monodromy matrices and
//! polynomial files, emitted verbatim.

pub const ITEMS: &[(&str, &str)] = &[
    ("unknot.cat", UNKNOT_CAT),
    ("empty1.cat", EMPTY1_CAT),
    ("empty2.cat", EMPTY2_CAT),
    ("empty3.cat", EMPTY3_CAT),
    ("trefoil.mat", TREFOIL_MAT),
    ("fig8.mat", FIG8_MAT),
    ("disk.mat", DISK_MAT),
    ("hopf.poly", HOPF_POLY),
    ("torus24.poly", TORUS24_POLY),
    ("zero.poly", ZERO_POLY),
];

pub fn get(name: &str) -> Option<&'static str> {
    ITEMS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

/// Binding of an open book of the three-sphere with disk pages: one
/// interior elliptic orbit of degree one plus the boundary quadruple.
const UNKNOT_CAT: &str = r#"nvars = 1

[[interior]]
id = "u"
kind = "elliptic"
degree = [1]
action = "5/2"

[[boundary]]
e = "e1"
h = "h1"
e_plus = "e1p"
h_plus = "h1p"
"#;

const EMPTY1_CAT: &str = r#"nvars = 1

[[boundary]]
e = "e1"
h = "h1"
e_plus = "e1p"
h_plus = "h1p"
"#;

const EMPTY2_CAT: &str = r#"nvars = 2

[[boundary]]
e = "e1"
h = "h1"
e_plus = "e1p"
h_plus = "h1p"

[[boundary]]
e = "e2"
h = "h2"
e_plus = "e2p"
h_plus = "h2p"
"#;

const EMPTY3_CAT: &str = r#"nvars = 3

[[boundary]]
e = "e1"
h = "h1"
e_plus = "e1p"
h_plus = "h1p"

[[boundary]]
e = "e2"
h = "h2"
e_plus = "e2p"
h_plus = "h2p"

[[boundary]]
e = "e3"
h = "h3"
e_plus = "e3p"
h_plus = "h3p"
"#;

/// Monodromy of the genus-one page of the trefoil.
const TREFOIL_MAT: &str = r#"matrix = [[1, -1], [1, 0]]
"#;

/// Monodromy of the genus-one page of the figure-eight knot.
const FIG8_MAT: &str = r#"matrix = [[2, 1], [1, 1]]
"#;

/// Disk page: the unknot. The empty matrix has determinant one.
const DISK_MAT: &str = r#"matrix = []
"#;

/// Two-variable polynomial 1: the Alexander polynomial shape of the Hopf
/// link, used as the full side of a Torres check against the unknot.
const HOPF_POLY: &str = r#"nvars = 2
terms = [{ exp = [0, 0], coeff = 1 }]
"#;

/// Two-variable polynomial 1 + t1*t2: the (2,4)-torus-link shape.
const TORUS24_POLY: &str = r#"nvars = 2
terms = [
  { exp = [0, 0], coeff = 1 },
  { exp = [1, 1], coeff = 1 },
]
"#;

/// The zero polynomial in two variables: the split-link degenerate case.
const ZERO_POLY: &str = r#"nvars = 2
terms = []
"#;
