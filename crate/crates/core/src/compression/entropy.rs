use super::FrequencyTable;

/// Shannon entropy `-sum p log2 p` of the symbol distribution, in bits per symbol.
pub fn shannon_entropy(table: &FrequencyTable) -> f64 {
    let total = table.total() as f64;
    let h: f64 = table
        .iter()
        .map(|(_, c)| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum();
    // -0.0 for a single symbol
    h.max(0.0)
}
