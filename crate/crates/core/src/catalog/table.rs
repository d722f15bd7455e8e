//! Coble surfaces with finite automorphism group in characteristic `p != 2`.

/// One row; `aut` and `r_invariant` are kept as typeset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub key: &'static str,
    pub type_name: &'static str,
    pub p: &'static str,
    pub n: u32,
    pub k: usize,
    pub aut: &'static str,
    pub r_invariant: &'static str,
    /// `K` in the named-lattice grammar.
    pub k_lattice: &'static str,
    /// `H = (Z/2Z)^h_dim`.
    pub h_dim: usize,
    /// Name of the built-in graph, when there is one.
    pub builtin: Option<&'static str>,
}

impl Table1Row {
    /// `None` for "any".
    pub fn characteristic(&self) -> Option<u64> {
        self.p.parse().ok()
    }
}

pub const TABLE1: [Table1Row; 9] = [
    Table1Row {
        key: "I(n=1)",
        type_name: "I",
        p: "any",
        n: 1,
        k: 12,
        aut: r"${\rm D}_8$",
        r_invariant: r"$(E_8\oplus A_1, \{0\})$",
        k_lattice: "E8+A1",
        h_dim: 0,
        builtin: Some("I1"),
    },
    Table1Row {
        key: "I(n=2)",
        type_name: "I",
        p: "any",
        n: 2,
        k: 12,
        aut: r"${\rm D}_8$",
        r_invariant: r"$(E_8\oplus A_1^{\oplus 2}, {\bf Z}/2{\bf Z})$",
        k_lattice: "E8+A1+A1",
        h_dim: 1,
        builtin: Some("I"),
    },
    Table1Row {
        key: "II",
        type_name: "II",
        p: "any",
        n: 1,
        k: 12,
        aut: r"$S_4$",
        r_invariant: r"$(D_9, \{0\})$",
        k_lattice: "D9",
        h_dim: 0,
        builtin: Some("II"),
    },
    Table1Row {
        key: "V",
        type_name: "V",
        p: "3",
        n: 2,
        k: 20,
        aut: r"$S_4 \times {\bf Z}/2{\bf Z}$",
        r_invariant: r"$(E_7\oplus A_2\oplus A_1^{\oplus 2}, ({\bf Z}/2{\bf Z})^2)$",
        k_lattice: "E7+A2+A1+A1",
        h_dim: 2,
        builtin: None,
    },
    Table1Row {
        key: "VI(p=5)",
        type_name: "VI",
        p: "5",
        n: 1,
        k: 20,
        aut: r"$S_5$",
        r_invariant: r"$(E_6\oplus A_4, \{0\})$",
        k_lattice: "E6+A4",
        h_dim: 0,
        builtin: Some("VI5"),
    },
    Table1Row {
        key: "VI(p=3)",
        type_name: "VI",
        p: "3",
        n: 5,
        k: 20,
        aut: r"$S_5$",
        r_invariant: r"$(E_6\oplus D_5, {\bf Z}/2{\bf Z})$",
        k_lattice: "E6+D5",
        h_dim: 1,
        builtin: Some("VI"),
    },
    Table1Row {
        key: "VII",
        type_name: "VII",
        p: "5",
        n: 1,
        k: 20,
        aut: r"$S_5$",
        r_invariant: r"$(A_9\oplus A_1, {\bf Z}/2{\bf Z})$",
        k_lattice: "A9+A1",
        h_dim: 1,
        builtin: None,
    },
    Table1Row {
        key: "MI",
        type_name: "MI",
        p: "3",
        n: 2,
        k: 40,
        aut: r"${\rm Aut}(S_6)$",
        r_invariant: r"$(A_5^{\oplus 2}\oplus A_1^{\oplus 2}, ({\bf Z}/2{\bf Z})^{3})$",
        k_lattice: "A5+A5+A1+A1",
        h_dim: 3,
        builtin: Some("MI"),
    },
    Table1Row {
        key: "MII",
        type_name: "MII",
        p: "3",
        n: 8,
        k: 40,
        aut: r"$(S_4\times S_4)\cdot {\bf Z}/2{\bf Z}$",
        r_invariant: r"$(D_8\oplus A_2^{\oplus 2}, ({\bf Z}/2{\bf Z})^{2})$",
        k_lattice: "D8+A2+A2",
        h_dim: 2,
        builtin: Some("MII"),
    },
];

/// Looks a row up by key (`I(n=1)`, `VI(p=3)`, ...) or by built-in graph name.
pub fn table1(name: &str) -> Option<&'static Table1Row> {
    TABLE1
        .iter()
        .find(|r| r.key == name)
        .or_else(|| TABLE1.iter().find(|r| r.builtin == Some(name)))
}
