#![allow(dead_code)]

use genusforge::charclass::RootGroup;
use genusforge::equivariant::GroupElement2x2;
use genusforge::ktheory::KClass;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A class of rank at most 3 built from root-pair and Chern families with
/// bundle labels starting at `label`.
pub fn random_class(rng: &mut ChaCha8Rng, label: &str) -> KClass {
    let mut e = KClass::default();
    let mut rank = 0;
    let mut i = 0;
    while rank < 3 {
        let name = format!("{label}{i}");
        i += 1;
        match rng.gen_range(0..4) {
            0 if rank + 2 <= 3 => {
                e = e.plus(&KClass::bundle(RootGroup::pairs(&name, 1)));
                rank += 2;
            }
            1 => {
                let n = rng.gen_range(1..=3 - rank);
                e = e.plus(&KClass::bundle(RootGroup::complex(&name, n as usize)));
                rank += n;
            }
            2 => {
                e = e.plus(&KClass::trivial(1));
                rank += 1;
            }
            _ => break,
        }
    }
    if e.parts.is_empty() {
        e = KClass::bundle(RootGroup::complex(&format!("{label}x"), 1));
    }
    e
}

/// A random word of length `len` in `S`, `T` and their inverses.
pub fn random_word(rng: &mut ChaCha8Rng, len: usize) -> GroupElement2x2 {
    let gens = [
        GroupElement2x2::S,
        GroupElement2x2::T,
        GroupElement2x2::S.inverse(),
        GroupElement2x2::T.inverse(),
    ];
    (0..len).fold(GroupElement2x2::IDENTITY, |acc, _| acc.mul(&gens[rng.gen_range(0..4)]))
}
