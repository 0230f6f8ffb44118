use gr_codes::frs::FoldedWord;
use gr_codes::{RingElement, RingParams};
use rand::seq::index::sample;
use rand::Rng;

/// Replaces exactly `e` distinct positions with uniform symbols different
/// from the original. Returns the sorted positions.
pub fn corrupt_symbols<R: Rng>(ring: &RingParams, word: &mut [RingElement], e: usize, rng: &mut R) -> Vec<usize> {
    let mut positions = sample(rng, word.len(), e).into_vec();
    positions.sort_unstable();
    for &i in &positions {
        word[i] = loop {
            let x = ring.random_element(rng);
            if x != word[i] {
                break x;
            }
        };
    }
    positions
}

/// Column version of [`corrupt_symbols`]: each chosen column is replaced by a
/// uniform column that differs from it in at least one symbol.
pub fn corrupt_columns<R: Rng>(ring: &RingParams, word: &mut FoldedWord, e: usize, rng: &mut R) -> Vec<usize> {
    let mut positions = sample(rng, word.num_columns(), e).into_vec();
    positions.sort_unstable();
    let height = word.height();
    for &i in &positions {
        let col = &mut word.columns_mut()[i];
        *col = loop {
            let fresh: Vec<_> = (0..height).map(|_| ring.random_element(rng)).collect();
            if fresh != *col {
                break fresh;
            }
        };
    }
    positions
}

#[cfg(test)]
mod tests {
    use super::*;
    use gr_codes::build_ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exactly_e_symbols_change() {
        let r = build_ring(2, 1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for e in 0..=6 {
            let orig = vec![r.zero(); 6];
            let mut w = orig.clone();
            let pos = corrupt_symbols(&r, &mut w, e, &mut rng);
            assert_eq!(pos.len(), e);
            let diff: Vec<usize> = (0..6).filter(|&i| w[i] != orig[i]).collect();
            assert_eq!(diff, pos);
        }
    }

    #[test]
    fn columns_change_as_units() {
        let r = build_ring(2, 2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let orig = FoldedWord::from_columns(vec![vec![r.one(); 2]; 5]).unwrap();
        let mut w = orig.clone();
        let pos = corrupt_columns(&r, &mut w, 3, &mut rng);
        let diff: Vec<usize> = (0..5).filter(|&i| w.columns()[i] != orig.columns()[i]).collect();
        assert_eq!(diff, pos);
    }
}
