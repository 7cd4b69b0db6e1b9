//! Seeded automaton generators for test corpora and experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dfa::Dfa;

/// A uniformly random complete automaton. Each state is final with
/// probability `final_density`. Identical arguments give identical automata.
pub fn random_dfa(num_states: usize, alphabet_size: usize, final_density: f64, seed: u64) -> Dfa {
    assert!(num_states >= 1 && alphabet_size >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = final_density.clamp(0.0, 1.0);
    let transitions =
        (0..num_states).map(|_| (0..alphabet_size).map(|_| rng.random_range(0..num_states)).collect()).collect();
    let finals: Vec<usize> = (0..num_states).filter(|_| rng.random_bool(density)).collect();
    let start = rng.random_range(0..num_states);
    Dfa::new(alphabet_size, transitions, start, finals).expect("generated automaton is complete")
}

/// A random unary automaton in which every state is reachable: the path
/// `0 -> 1 -> … -> n-1` closed by a back edge from `n-1` to a random state.
pub fn random_lasso(num_states: usize, final_density: f64, seed: u64) -> Dfa {
    assert!(num_states >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = final_density.clamp(0.0, 1.0);
    let loop_to = rng.random_range(0..num_states);
    let successors = (0..num_states).map(|i| if i + 1 < num_states { i + 1 } else { loop_to }).collect();
    let finals: Vec<usize> = (0..num_states).filter(|_| rng.random_bool(density)).collect();
    Dfa::unary(successors, 0, finals).expect("lasso is complete")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_single_state() {
        for seed in 0..5 {
            let d = random_dfa(1, 1, 1.0, seed);
            assert_eq!(d, Dfa::unary(vec![0], 0, [0]).unwrap());
        }
    }

    #[test]
    fn seeded_determinism() {
        assert_eq!(random_dfa(30, 2, 0.4, 11), random_dfa(30, 2, 0.4, 11));
        assert_eq!(random_lasso(30, 0.4, 11), random_lasso(30, 0.4, 11));
    }

    #[test]
    fn generated_automata_validate() {
        assert!(random_dfa(100, 2, 0.5, 7).validate().is_ok());
        let lasso = random_lasso(20, 0.5, 3);
        assert!(lasso.validate().is_ok());
        assert_eq!(lasso.start, 0);
    }
}
