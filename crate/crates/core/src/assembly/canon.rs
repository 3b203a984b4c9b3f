use crate::string::{AssemblyString, Symbol};

/// Relabels symbols by order of first occurrence: the first distinct symbol
/// becomes token 0, the next token 1, and so on.
pub fn canonicalize(s: &AssemblyString) -> AssemblyString {
    canonicalize_with_labels(s).0
}

/// Canonical form plus the original symbol for each token.
pub(crate) fn canonicalize_with_labels(s: &AssemblyString) -> (AssemblyString, Vec<Symbol>) {
    let mut labels: Vec<Symbol> = Vec::new();
    let tokens = s
        .symbols()
        .iter()
        .map(|sym| {
            let token = match labels.iter().position(|l| l == sym) {
                Some(t) => t,
                None => {
                    labels.push(*sym);
                    labels.len() - 1
                }
            };
            Symbol(token as u32)
        })
        .collect();
    (AssemblyString::new(tokens).expect("same length as input"), labels)
}
