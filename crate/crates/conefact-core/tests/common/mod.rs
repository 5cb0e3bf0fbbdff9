use conefact_core::random::random_interior;
use conefact_core::{BlockKind, ConeStructure, Element};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn orthant(k: usize) -> ConeStructure {
    ConeStructure::new(vec![BlockKind::Orthant { k }]).unwrap()
}

pub fn soc(k: usize) -> ConeStructure {
    ConeStructure::new(vec![BlockKind::Soc { k }]).unwrap()
}

pub fn sym(n: usize) -> ConeStructure {
    ConeStructure::new(vec![BlockKind::Sym { n }]).unwrap()
}

pub fn mixed() -> ConeStructure {
    ConeStructure::new(vec![
        BlockKind::Orthant { k: 2 },
        BlockKind::Soc { k: 3 },
        BlockKind::Sym { n: 3 },
    ])
    .unwrap()
}

/// One structure per simple block kind plus a mixed direct sum, with block
/// sizes drawn from the ranges the test suites exercise.
pub fn test_structures() -> Vec<ConeStructure> {
    vec![orthant(4), soc(4), sym(3), mixed()]
}

pub fn random_structures(rng: &mut ChaCha8Rng, count: usize) -> Vec<ConeStructure> {
    (0..count)
        .map(|_| {
            let n_blocks = rng.gen_range(1..=3);
            let blocks = (0..n_blocks)
                .map(|_| match rng.gen_range(0..3) {
                    0 => BlockKind::Orthant {
                        k: rng.gen_range(1..=6),
                    },
                    1 => BlockKind::Soc {
                        k: rng.gen_range(1..=6),
                    },
                    _ => BlockKind::Sym {
                        n: rng.gen_range(1..=5),
                    },
                })
                .collect();
            ConeStructure::new(blocks).unwrap()
        })
        .collect()
}

/// Interior sample; not necessarily well conditioned.
pub fn interior(structure: &ConeStructure, rng: &mut ChaCha8Rng) -> Element<f64> {
    random_interior(structure, 1.0, rng)
}

/// A sign-indefinite (not cone-constrained) element.
pub fn arbitrary(structure: &ConeStructure, rng: &mut ChaCha8Rng) -> Element<f64> {
    let coords: Vec<f64> = (0..structure.dim())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    Element::unflatten(structure, &coords).unwrap()
}
