//! Kodaira fibre types, their extended Dynkin diagrams, and the extremal
//! rational elliptic and quasi-elliptic fibrations in characteristic `!= 2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::rootgraph::{DiagramType, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaFiber {
    /// `I_n`, `n >= 1`.
    I(u32),
    /// `I_n^*`, `n >= 0`.
    IStar(u32),
    II,
    IIStar,
    III,
    IIIStar,
    IV,
    IVStar,
}

use KodairaFiber::*;

impl KodairaFiber {
    /// Euler number of the fibre.
    pub fn euler(self) -> u32 {
        match self {
            I(n) => n,
            IStar(n) => n + 6,
            II => 2,
            III => 3,
            IV => 4,
            IVStar => 8,
            IIIStar => 9,
            IIStar => 10,
        }
    }

    pub fn is_reducible(self) -> bool {
        !matches!(self, I(1) | II)
    }

    /// Every tag with index below `bound`, for exhaustive checks.
    pub fn all_up_to(bound: u32) -> Vec<KodairaFiber> {
        let mut v: Vec<KodairaFiber> = (1..bound).map(I).collect();
        v.extend((0..bound).map(IStar));
        v.extend([II, IIStar, III, IIIStar, IV, IVStar]);
        v
    }
}

impl fmt::Display for KodairaFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            I(n) => write!(f, "I{n}"),
            IStar(n) => write!(f, "I{n}*"),
            II => f.write_str("II"),
            IIStar => f.write_str("II*"),
            III => f.write_str("III"),
            IIIStar => f.write_str("III*"),
            IV => f.write_str("IV"),
            IVStar => f.write_str("IV*"),
        }
    }
}

impl FromStr for KodairaFiber {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (body, star) = match t.strip_suffix('*') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let fiber = match (body, star) {
            ("II", false) => II,
            ("II", true) => IIStar,
            ("III", false) => III,
            ("III", true) => IIIStar,
            ("IV", false) => IV,
            ("IV", true) => IVStar,
            _ => {
                let n: u32 = body
                    .strip_prefix('I')
                    .map(|r| r.trim_start_matches('_'))
                    .and_then(|r| r.parse().ok())
                    .ok_or_else(|| format!("unknown fibre type `{s}`"))?;
                match (n, star) {
                    (0, false) => return Err(format!("`{s}` is a smooth fibre")),
                    (n, false) => I(n),
                    (n, true) => IStar(n),
                }
            }
        };
        Ok(fiber)
    }
}

/// Parses a whitespace or comma separated fibre list, optionally in
/// parentheses.
pub fn parse_fibers(s: &str) -> Result<Vec<KodairaFiber>, String> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Sorted by decreasing Euler number, ties by tag.
pub fn canonical(fibers: &[KodairaFiber]) -> Vec<KodairaFiber> {
    let mut v = fibers.to_vec();
    v.sort_by(|a, b| b.euler().cmp(&a.euler()).then(a.cmp(b)));
    v
}

pub fn fibers_to_string(fibers: &[KodairaFiber]) -> String {
    let parts: Vec<String> = canonical(fibers).iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Extended Dynkin diagram of the reducible fibre; `None` for `I1` and `II`.
pub fn diagram_of(f: KodairaFiber) -> Option<DiagramType> {
    let d = |family, index| Some(DiagramType::new(family, index));
    match f {
        I(1) | II => None,
        I(n) => d(Family::AffA, n as usize - 1),
        III => d(Family::AffA, 1),
        IV => d(Family::AffA, 2),
        IStar(n) => d(Family::AffD, n as usize + 4),
        IIStar => d(Family::AffE, 8),
        IIIStar => d(Family::AffE, 7),
        IVStar => d(Family::AffE, 6),
    }
}

/// Fibres whose diagram is `d`; empty for finite types.
pub fn fibers_of(d: DiagramType) -> Vec<KodairaFiber> {
    match (d.family, d.index) {
        (Family::AffA, 1) => vec![I(2), III],
        (Family::AffA, 2) => vec![I(3), IV],
        (Family::AffA, k) => vec![I(k as u32 + 1)],
        (Family::AffD, n) => vec![IStar(n as u32 - 4)],
        (Family::AffE, 6) => vec![IVStar],
        (Family::AffE, 7) => vec![IIIStar],
        (Family::AffE, 8) => vec![IIStar],
        _ => Vec::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharClass {
    /// `p` not in `{2, 3, 5}`.
    Generic,
    P5,
    P3,
}

impl CharClass {
    pub const ALL: [CharClass; 3] = [CharClass::Generic, CharClass::P5, CharClass::P3];

    fn column(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharClass::Generic => "generic",
            CharClass::P5 => "p5",
            CharClass::P3 => "p3",
        })
    }
}

impl FromStr for CharClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "generic" => Ok(CharClass::Generic),
            "p5" | "5" => Ok(CharClass::P5),
            "p3" | "3" => Ok(CharClass::P3),
            other => Err(format!("unknown characteristic class `{other}` (generic, p5, p3)")),
        }
    }
}

/// Extremal rational elliptic fibrations: columns `char != 2,3,5`,
/// `char = 5`, `char = 3`; `None` where the configuration does not occur.
pub const EXTREMAL_TABLE: [[Option<&str>; 3]; 16] = [
    [Some("II*, II"), Some("II*, II"), Some("II*")],
    [Some("III*, III"), Some("III*, III"), Some("III*, III")],
    [Some("IV*, IV"), Some("IV*, IV"), None],
    [Some("I0*, I0*"), Some("I0*, I0*"), Some("I0*, I0*")],
    [Some("II*, I1, I1"), Some("II*, I1, I1"), Some("II*, I1")],
    [Some("III*, I2, I1"), Some("III*, I2, I1"), Some("III*, I2, I1")],
    [Some("IV*, I3, I1"), Some("IV*, I3, I1"), Some("IV*, I3")],
    [Some("I4*, I1, I1"), Some("I4*, I1, I1"), Some("I4*, I1, I1")],
    [Some("I2*, I2, I2"), Some("I2*, I2, I2"), Some("I2*, I2, I2")],
    [Some("I1*, I4, I1"), Some("I1*, I4, I1"), Some("I1*, I4, I1")],
    [Some("I9, I1, I1, I1"), Some("I9, I1, I1, I1"), Some("I9, II")],
    [Some("I8, I2, I1, I1"), Some("I8, I2, I1, I1"), Some("I8, I2, I1, I1")],
    [Some("I6, I3, I2, I1"), Some("I6, I3, I2, I1"), Some("I6, I3, III")],
    [Some("I5, I5, I1, I1"), Some("I5, I5, II"), Some("I5, I5, I1, I1")],
    [Some("I4, I4, I2, I2"), Some("I4, I4, I2, I2"), Some("I4, I4, I2, I2")],
    [Some("I3, I3, I3, I3"), Some("I3, I3, I3, I3"), None],
];

/// Reducible fibres of rational quasi-elliptic fibrations in characteristic 3.
pub const QUASI_ELLIPTIC_P3: [&str; 3] = ["II*", "IV*, IV", "IV, IV, IV, IV"];

/// Largest number of singular fibres in any tabulated configuration.
pub const MAX_FIBERS: usize = 4;

/// Canonical fibre lists of one column of the extremal table.
pub fn extremal_column(c: CharClass) -> Vec<Vec<KodairaFiber>> {
    EXTREMAL_TABLE
        .iter()
        .filter_map(|row| row[c.column()])
        .map(|s| canonical(&parse_fibers(s).expect("table entries parse")))
        .collect()
}

pub fn quasi_elliptic() -> Vec<Vec<KodairaFiber>> {
    QUASI_ELLIPTIC_P3
        .iter()
        .map(|s| canonical(&parse_fibers(s).expect("table entries parse")))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FibrationKind {
    Elliptic,
    QuasiElliptic,
}

/// How a fibre multiset occurs in the tables for `c`.
pub fn lookup_kinds(fibers: &[KodairaFiber], c: CharClass) -> Vec<FibrationKind> {
    let f = canonical(fibers);
    let mut out = Vec::new();
    if extremal_column(c).contains(&f) {
        out.push(FibrationKind::Elliptic);
    }
    if c == CharClass::P3 && quasi_elliptic().contains(&f) {
        out.push(FibrationKind::QuasiElliptic);
    }
    out
}

pub fn extremal_lookup(fibers: &[KodairaFiber], c: CharClass) -> bool {
    !lookup_kinds(fibers, c).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Assignment {
    /// Canonically ordered.
    pub fibers: Vec<KodairaFiber>,
    pub kind: FibrationKind,
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FibrationKind::Elliptic => "elliptic",
            FibrationKind::QuasiElliptic => "quasi-elliptic",
        };
        write!(f, "{} {kind}", fibers_to_string(&self.fibers))
    }
}

/// Fibre configurations realising the parabolic type multiset `types`: each
/// component replaced by one of its fibres, padded by irreducible fibres
/// `I1`, `II` up to [`MAX_FIBERS`] in total, kept when the tables accept
/// them. Sorted, without repetitions.
pub fn admissible_assignments(types: &[DiagramType], c: CharClass) -> Vec<Assignment> {
    let mut choices: Vec<Vec<KodairaFiber>> = vec![Vec::new()];
    for &t in types {
        let opts = fibers_of(t);
        choices = choices
            .iter()
            .flat_map(|base| {
                opts.iter().map(move |&f| {
                    let mut v = base.clone();
                    v.push(f);
                    v
                })
            })
            .collect();
    }
    let mut out = BTreeSet::new();
    for base in choices {
        if base.len() > MAX_FIBERS {
            continue;
        }
        for pad in 0..=MAX_FIBERS - base.len() {
            // `ones` copies of I1 and the rest II
            for ones in 0..=pad {
                let mut v = base.clone();
                v.extend(std::iter::repeat(I(1)).take(ones));
                v.extend(std::iter::repeat(II).take(pad - ones));
                for kind in lookup_kinds(&v, c) {
                    out.insert(Assignment {
                        fibers: canonical(&v),
                        kind,
                    });
                }
            }
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(s: &str) -> Vec<KodairaFiber> {
        parse_fibers(s).unwrap()
    }

    fn t(s: &str) -> DiagramType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for tok in ["I1", "I9", "I0*", "I4*", "II", "II*", "III", "III*", "IV", "IV*"] {
            assert_eq!(tok.parse::<KodairaFiber>().unwrap().to_string(), tok);
        }
        assert_eq!("I_5".parse::<KodairaFiber>().unwrap(), I(5));
        assert!("I0".parse::<KodairaFiber>().is_err());
        assert!("V".parse::<KodairaFiber>().is_err());
        assert_eq!(fs("(I9, II)"), vec![I(9), II]);
    }

    #[test]
    fn correspondence() {
        assert_eq!(diagram_of(I(6)), Some(t("~A5")));
        assert_eq!(diagram_of(II), None);
        assert_eq!(diagram_of(IStar(0)), Some(t("~D4")));
        assert_eq!(fibers_of(t("~A2")), vec![I(3), IV]);
        assert_eq!(fibers_of(t("~E8")), vec![IIStar]);
        assert_eq!(fibers_of(t("~A7")), vec![I(8)]);
        assert!(fibers_of(t("A3")).is_empty());
        for f in KodairaFiber::all_up_to(12) {
            match diagram_of(f) {
                Some(d) => assert!(fibers_of(d).contains(&f), "{f}"),
                None => assert!(!f.is_reducible()),
            }
        }
    }

    #[test]
    fn column_sizes() {
        assert_eq!(extremal_column(CharClass::Generic).len(), 16);
        assert_eq!(extremal_column(CharClass::P5).len(), 16);
        assert_eq!(extremal_column(CharClass::P3).len(), 14);
    }

    #[test]
    fn generic_rows_have_euler_number_twelve() {
        for row in extremal_column(CharClass::Generic) {
            assert_eq!(row.iter().map(|f| f.euler()).sum::<u32>(), 12, "{row:?}");
        }
    }

    #[test]
    fn lookups() {
        use CharClass::*;
        assert!(extremal_lookup(&fs("I5 I5 I1 I1"), Generic));
        assert!(!extremal_lookup(&fs("I5 I5 I1 I1"), P5));
        assert!(extremal_lookup(&fs("I1 I5 I1 I5"), P3));
        assert!(extremal_lookup(&fs("I5 I5 II"), P5));
        assert!(!extremal_lookup(&fs("I3 I3 I3 I3"), P3));
        assert!(extremal_lookup(&fs("IV IV IV IV"), P3));
        assert!(!extremal_lookup(&fs("IV IV IV IV"), Generic));
        assert_eq!(lookup_kinds(&fs("IV* IV"), P3), vec![FibrationKind::QuasiElliptic]);
    }

    #[test]
    fn assignments() {
        use CharClass::*;
        let a = admissible_assignments(&[t("~A4"), t("~A4")], Generic);
        assert!(a.iter().any(|x| x.fibers == fs("I5 I5 I1 I1")));
        let a = admissible_assignments(&[t("~E8")], P3);
        assert!(a.contains(&Assignment {
            fibers: fs("II* I1"),
            kind: FibrationKind::Elliptic
        }));
        assert!(a.contains(&Assignment {
            fibers: fs("II*"),
            kind: FibrationKind::QuasiElliptic
        }));
        let a = admissible_assignments(&[t("~A2"); 4], P3);
        assert_eq!(
            a,
            vec![Assignment {
                fibers: fs("IV IV IV IV"),
                kind: FibrationKind::QuasiElliptic
            }]
        );
        assert!(admissible_assignments(&[t("~A2"); 4], Generic)
            .iter()
            .all(|x| x.fibers == fs("I3 I3 I3 I3")));
    }
}
