use crate::error::{Error, Result};

/// Exact edge-boundary count in the product of complete graphs `K_ℓ^n`:
/// vertices are words in `[ℓ]^n`, edges join words differing in exactly one
/// letter. Returns `(|∂_e A|, |A|, ok)` where `ok` asserts `|∂_e A| ≥ |A|`
/// whenever `|A| ≤ (1 - 1/ℓ)·ℓ^n`.
pub fn product_complete_graph_isoperimetry(
    ell: usize,
    n: u32,
    set: &[bool],
) -> Result<(u64, u64, bool)> {
    if ell < 2 {
        return Err(Error::ParameterDomain("need ℓ ≥ 2".into()));
    }
    let total = (ell as u64)
        .checked_pow(n)
        .filter(|&t| t <= 1_000_000)
        .ok_or_else(|| Error::BudgetExceeded(format!("ℓ^n too large (ℓ = {ell}, n = {n})")))?;
    if set.len() as u64 != total {
        return Err(Error::Malformed(format!(
            "set table must have ℓ^n = {total} entries"
        )));
    }
    let size = set.iter().filter(|&&b| b).count() as u64;
    let mut boundary = 0u64;
    // strides for coordinate digits
    let mut stride = vec![1u64; n as usize];
    for i in 1..n as usize {
        stride[i] = stride[i - 1] * ell as u64;
    }
    for (idx, &inside) in set.iter().enumerate() {
        if !inside {
            continue;
        }
        let idx = idx as u64;
        for (i, &st) in stride.iter().enumerate() {
            let digit = (idx / st) % ell as u64;
            let base = idx - digit * st;
            for v in 0..ell as u64 {
                if v != digit && !set[(base + v * st) as usize] {
                    boundary += 1;
                }
            }
            let _ = i;
        }
    }
    let applicable = size as f64 <= (1.0 - 1.0 / ell as f64) * total as f64;
    let ok = !applicable || boundary >= size;
    Ok((boundary, size, ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;

    #[test]
    fn singleton_has_full_degree() {
        let mut set = vec![false; 6 * 6 * 6];
        set[17] = true;
        let (boundary, size, ok) = product_complete_graph_isoperimetry(6, 3, &set).unwrap();
        assert_eq!(size, 1);
        assert_eq!(boundary, 3 * 5);
        assert!(ok);
    }

    #[test]
    fn half_of_the_square() {
        // K₂²: A = one edge of the 4-cycle
        let set = vec![true, true, false, false];
        let (boundary, size, ok) = product_complete_graph_isoperimetry(2, 2, &set).unwrap();
        assert_eq!(size, 2);
        assert_eq!(boundary, 2);
        assert!(ok);
    }

    #[test]
    fn random_half_sets_in_k6_cubed() {
        let total = 216;
        for seed in 0..50u64 {
            let mut rng = crate::rng::stream(seed, 0);
            let mut idx: Vec<usize> = (0..total).collect();
            idx.shuffle(&mut rng);
            let mut set = vec![false; total];
            for &i in idx.iter().take(total / 2) {
                set[i] = true;
            }
            let (boundary, size, ok) = product_complete_graph_isoperimetry(6, 3, &set).unwrap();
            assert!(ok, "seed {seed}: boundary {boundary} < size {size}");
        }
    }

    #[test]
    fn oversize_sets_are_exempt() {
        // the complement of a point is above the mass threshold
        let mut set = vec![true; 16];
        set[3] = false;
        let (boundary, size, ok) = product_complete_graph_isoperimetry(2, 4, &set).unwrap();
        assert_eq!(size, 15);
        assert!(boundary < size);
        assert!(ok, "bound does not apply above the mass cap");
    }
}
