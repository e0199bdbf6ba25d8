//! Dualities and codes embedded in the binary, stored as file text.

use crate::format::{parse_code, parse_duality, FormatError, ParsedCode};
use addhull_core::Duality;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Duality,
    Code,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fixture {
    pub id: &'static str,
    pub kind: Kind,
    pub text: &'static str,
    pub about: &'static str,
}

pub const CATALOG: &[Fixture] = &[
    Fixture { id: "f9.M1", kind: Kind::Duality, text: "3 2\n1 0\n0 2\n", about: "symmetric duality over F_9" },
    Fixture { id: "f9.M2", kind: Kind::Duality, text: "3 2\n0 1\n2 0\n", about: "skew-symmetric duality over F_9" },
    Fixture {
        id: "f9.M3",
        kind: Kind::Duality,
        text: "3 2\n0 1\n2 1\n",
        about: "duality over F_9, neither symmetric nor skew",
    },
    Fixture { id: "f4.N1", kind: Kind::Duality, text: "2 2\n1 1\n0 1\n", about: "non-symmetric duality over F_4" },
    Fixture { id: "f4.N2", kind: Kind::Duality, text: "2 2\n1 0\n1 1\n", about: "transpose of f4.N1" },
    Fixture {
        id: "ex4_1",
        kind: Kind::Duality,
        text: "3 3\n1 2 0\n0 1 2\n1 0 1\n",
        about: "F_27 duality with nine self-orthogonal elements",
    },
    Fixture {
        id: "ex4_2",
        kind: Kind::Duality,
        text: "3 3\n2 1 1\n0 1 1\n1 0 1\n",
        about: "F_27 duality with three self-orthogonal elements",
    },
    Fixture {
        id: "ex2_1.code",
        kind: Kind::Code,
        text: "2 2 5 2\n1 2 1 3 2\n2 3 2 1 3\n",
        about: "[5, 2^2, 5] code over F_4",
    },
    Fixture {
        id: "thm5_2.input",
        kind: Kind::Code,
        text: "3 2 5 3\n1 1 1 1 3\n3 3 6 6 1\n2 3 1 3 0\n",
        about: "[5, 3^3, 4] self-orthogonal under f9.M1",
    },
    Fixture {
        id: "thm5_4.code",
        kind: Kind::Code,
        text: "3 2 4 3\n1 1 1 1\n3 6 5 0\n3 7 6 3\n",
        about: "one-rank hull code under f9.M2 with tridiagonal pairings",
    },
    Fixture {
        id: "thm5_5.input",
        kind: Kind::Code,
        text: "3 2 4 2\n1 1 0 0\n3 3 3 3\n",
        about: "[4, 3^2, 2] ACD code under f9.M2",
    },
];

pub fn get(id: &str) -> Option<&'static Fixture> {
    CATALOG.iter().find(|f| f.id == id)
}

pub fn duality(id: &str) -> Option<Result<Duality, FormatError>> {
    get(id).filter(|f| f.kind == Kind::Duality).map(|f| parse_duality(f.text))
}

pub fn code(id: &str) -> Option<Result<ParsedCode, FormatError>> {
    get(id).filter(|f| f.kind == Kind::Code).map(|f| parse_code(f.text))
}
