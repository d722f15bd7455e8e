//! Explicit rank-8 parabolic subdiagrams of the two 40-vertex graphs, one
//! per maximal type, with letters `i..n` specialised to `1..6`.

use crate::rootgraph::DiagramType;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Vertex labels of each component with its stated type.
    pub components: Vec<(Vec<&'static str>, DiagramType)>,
}

fn w(parts: &[(&[&'static str], &str)]) -> Witness {
    Witness {
        components: parts
            .iter()
            .map(|(ls, t)| (ls.to_vec(), t.parse().expect("valid type")))
            .collect(),
    }
}

pub fn witnesses(name: &str) -> Vec<Witness> {
    match name {
        "MI" => vec![
            w(&[
                (&["d:12", "d:23", "d:34", "d:45", "d:56", "d:16"], "~A5"),
                (&["s:15.24.36", "s:14.26.35", "s:13.25.46"], "~A2"),
                (&["s:14.25.36", "t:135"], "~A1"),
            ]),
            w(&[
                (&["d:12", "d:23", "d:34", "d:45", "d:15"], "~A4"),
                (&["s:13.25.46", "s:14.26.35", "s:13.24.56", "s:14.25.36", "s:16.24.35"], "~A4"),
            ]),
            w(&[
                (&["d:35", "d:36", "d:46", "d:45"], "~A3"),
                (&["s:13.24.56", "s:16.25.34", "s:14.23.56", "s:15.26.34"], "~A3"),
                (&["d:12", "s:12.34.56"], "~A1"),
                (&["t:134", "t:156"], "~A1"),
            ]),
            w(&[
                (&["d:12", "d:23", "d:13"], "~A2"),
                (&["d:45", "d:56", "d:46"], "~A2"),
                (&["s:15.26.34", "s:16.24.35", "s:14.25.36"], "~A2"),
                (&["s:16.25.34", "s:14.26.35", "s:15.24.36"], "~A2"),
            ]),
        ],
        "MII" => vec![
            w(&[
                (&["g:11", "g:41", "g:42", "g:32", "g:33", "g:23", "g:24", "g:14"], "~A7"),
                (&["p:(12)(34)", "p:(13)"], "~A1"),
            ]),
            w(&[
                (&["g:11", "g:31", "g:32", "g:22", "g:23", "g:13"], "~A5"),
                (&["p:(12)(34)", "p:(124)", "p:(142)"], "~A2"),
                (&["g:44", "p:(12)"], "~A1"),
            ]),
            w(&[
                (&["g:11", "g:21", "g:22", "g:12"], "~A3"),
                (&["g:33", "g:43", "g:44", "g:34"], "~A3"),
                (&["p:(13)(24)", "p:(14)(23)"], "~A1"),
                (&["p:(1324)", "p:(1423)"], "~A1"),
            ]),
            w(&[
                (&["g:11", "g:21", "g:31"], "~A2"),
                (&["g:42", "g:43", "g:44"], "~A2"),
                (&["p:(14)(23)", "p:(124)", "p:(134)"], "~A2"),
                (&["p:(14)", "p:(1324)", "p:(1234)"], "~A2"),
            ]),
        ],
        _ => Vec::new(),
    }
}
