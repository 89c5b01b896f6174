//! Catalogue numbers accepted by `verify --lemma`.

const TABLE: &[(&str, &str)] = &[
    ("2.1", "special-solution"),
    ("2.2", "node-values"),
    ("2.3", "residue-node-sum"),
    ("2.4", "c-map"),
    ("2.5", "fusion-ring"),
    ("2.6", "pairing-antidiagonal"),
    ("3.1", "connection-symmetries"),
    ("3.4", "block-split"),
    ("4.1", "rep-bijection"),
    ("4.2", "reduce-u"),
    ("4.3", "equivalence"),
    ("4.4", "ladders"),
    ("4.5", "equivalence"),
];

pub fn check_for(label: &str) -> Option<&'static str> {
    TABLE.iter().find(|(l, _)| *l == label).map(|(_, name)| *name)
}
