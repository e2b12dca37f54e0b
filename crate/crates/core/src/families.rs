//! Generators for the concrete link families, plus seeded random diagrams.
//!
//! Every generator recomputes the invariants it promises and panics if they
//! do not hold, so a wrong layout cannot leak out silently.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{ChordId, Endpoint, GaussDiagram, Role, Sign};
use crate::invariants::{is_homogeneous_proper, vlk_matrix, ParityMatrix};

/// Rejection attempts allowed per call of [`gen_random`] with
/// `homogeneous_proper` set.
pub const REJECTION_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("{family} needs n >= 1, got {n}")]
    NonPositive { family: &'static str, n: i64 },
    #[error("random diagrams need at least one component")]
    NoComponents,
    #[error("no homogeneous proper sample within {attempts} attempts for seed {seed}; retry with another seed")]
    RejectionBudget { seed: u64, attempts: usize },
}

/// Parameters naming one member of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Canonical(ParityMatrix),
    Lpq { p: i64, q: i64 },
    L2n1 { n: i64 },
    Torus { n: i64 },
    Random {
        components: usize,
        chords: usize,
        seed: u64,
        homogeneous_proper: bool,
    },
}

impl FamilySpec {
    pub fn generate(&self) -> Result<GaussDiagram, FamilyError> {
        match *self {
            FamilySpec::Canonical(ref bits) => Ok(gen_canonical(bits)),
            FamilySpec::Lpq { p, q } => Ok(gen_lpq(p, q)),
            FamilySpec::L2n1 { n } => gen_l2n1(n),
            FamilySpec::Torus { n } => gen_torus(n),
            FamilySpec::Random {
                components,
                chords,
                seed,
                homogeneous_proper,
            } => gen_random(components, chords, seed, homogeneous_proper),
        }
    }
}

/// Builds a diagram from `(over component, under component, sign)` triples,
/// appending endpoints in the given order.
fn from_chords(n: usize, chords: &[(usize, usize, Sign)]) -> GaussDiagram {
    let mut comps = alloc::vec![Vec::new(); n];
    let mut signs = BTreeMap::new();
    for (k, &(over, under, sign)) in chords.iter().enumerate() {
        let id = k as u32 + 1;
        comps[over].push(Endpoint::over(id));
        comps[under].push(Endpoint::under(id));
        signs.insert(ChordId(id), sign);
    }
    GaussDiagram::new(comps, signs)
        .expect("generated diagram is valid")
        .relabeled()
}

/// The representative of a parity class: one positive chord per set bit.
pub fn gen_canonical(bits: &ParityMatrix) -> GaussDiagram {
    let n = bits.n();
    let chords: Vec<_> = ParityMatrix::pairs(n)
        .filter(|&(i, j)| bits.get(i, j))
        .map(|(i, j)| (i, j, Sign::Pos))
        .collect();
    let d = from_chords(n, &chords);
    assert_eq!(&ParityMatrix::of(&d), bits);
    d
}

fn sign_of(x: i64) -> Sign {
    if x < 0 {
        Sign::Neg
    } else {
        Sign::Pos
    }
}

/// Two components with `vlk(2,1) = p` and `vlk(1,2) = q`, in blocks. The
/// 2-over-1 block comes first on both circles.
pub fn gen_lpq(p: i64, q: i64) -> GaussDiagram {
    let mut chords = Vec::new();
    chords.extend((0..p.unsigned_abs()).map(|_| (1, 0, sign_of(p))));
    chords.extend((0..q.unsigned_abs()).map(|_| (0, 1, sign_of(q))));
    let d = from_chords(2, &chords);
    let v = vlk_matrix(&d);
    assert_eq!((v[1][0], v[0][1]), (p, q));
    d
}

/// The (2,4n) virtual torus link: `2n` negative chords 1-over-2 in the same
/// cyclic order on both circles.
pub fn gen_torus(n: i64) -> Result<GaussDiagram, FamilyError> {
    if n < 1 {
        return Err(FamilyError::NonPositive { family: "torus", n });
    }
    let d = from_chords(2, &alloc::vec![(0, 1, Sign::Neg); 2 * n as usize]);
    let v = vlk_matrix(&d);
    assert_eq!((v[1][0], v[0][1]), (0, -2 * n));
    assert!(is_homogeneous_proper(&d));
    Ok(d)
}

/// `2n - 1` positive chords 1-over-2 in the same cyclic order on both circles.
pub fn gen_l2n1(n: i64) -> Result<GaussDiagram, FamilyError> {
    if n < 1 {
        return Err(FamilyError::NonPositive { family: "l2n1", n });
    }
    let d = from_chords(2, &alloc::vec![(0, 1, Sign::Pos); 2 * n as usize - 1]);
    let v = vlk_matrix(&d);
    assert_eq!((v[1][0], v[0][1]), (0, 2 * n - 1));
    Ok(d)
}

fn sample(rng: &mut ChaCha8Rng, k: usize, m: usize) -> GaussDiagram {
    let mut comps: Vec<Vec<Endpoint>> = alloc::vec![Vec::new(); k];
    let mut signs = BTreeMap::new();
    for c in 1..=m as u32 {
        let first = if rng.gen_bool(0.5) { Role::Over } else { Role::Under };
        for role in [first, first.flip()] {
            let comp = rng.gen_range(0..k);
            let pos = rng.gen_range(0..=comps[comp].len());
            comps[comp].insert(pos, Endpoint::new(c, role));
        }
        let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        signs.insert(ChordId(c), sign);
    }
    GaussDiagram::new(comps, signs)
        .expect("sampled diagram is valid")
        .relabeled()
}

/// A random diagram on `k` components with `m` chords, bit-identical for a
/// fixed seed. With `homogeneous_proper`, samples are redrawn until every
/// virtual linking number is even.
pub fn gen_random(k: usize, m: usize, seed: u64, homogeneous_proper: bool) -> Result<GaussDiagram, FamilyError> {
    if k == 0 {
        return Err(FamilyError::NoComponents);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !homogeneous_proper {
        return Ok(sample(&mut rng, k, m));
    }
    for _ in 0..REJECTION_BUDGET {
        let d = sample(&mut rng, k, m);
        if is_homogeneous_proper(&d) {
            return Ok(d);
        }
    }
    Err(FamilyError::RejectionBudget {
        seed,
        attempts: REJECTION_BUDGET,
    })
}
