//! Random valid ι-complexes for property tests: a symmetric staircase plus
//! mirrored pairs of acyclic boxes, followed by a random filtered change of
//! basis. Validity holds by construction; callers still validate.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{Generator, IotaComplex};
use crate::gf2::BitMatrix;

#[derive(Clone, Copy, Debug)]
pub struct RandomParams {
    pub max_steps: usize,
    pub max_step_length: i64,
    pub max_box_pairs: usize,
    pub max_box_side: i64,
    pub basis_moves: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self { max_steps: 3, max_step_length: 2, max_box_pairs: 2, max_box_side: 2, basis_moves: 6 }
    }
}

/// Gradings of the generator at the skew-mirrored filtration level.
fn mirror(g: &Generator, name: String) -> Generator {
    Generator::new(name, g.maslov - 2 * g.alexander, -g.alexander)
}

/// Gradings of the target of an arrow with horizontal drop `h` and vertical drop `v`.
fn arrow_target(src: &Generator, name: String, h: i64, v: i64) -> Generator {
    Generator::new(name, src.maslov + 2 * h - 1, src.alexander + h - v)
}

struct Builder {
    gens: Vec<Generator>,
    diff: Vec<(usize, usize)>,
    iota: Vec<(usize, usize)>,
}

impl Builder {
    fn push(&mut self, g: Generator) -> usize {
        self.gens.push(g);
        self.gens.len() - 1
    }

    fn build(self, name: &str) -> Arc<IotaComplex> {
        let n = self.gens.len();
        let diff = BitMatrix::from_entries(n, n, self.diff.iter().map(|&(s, d)| (d, s)));
        let iota = BitMatrix::from_entries(n, n, self.iota.iter().map(|&(s, d)| (d, s)));
        IotaComplex::new(name, self.gens, diff, iota, false).expect("random complex is valid by construction")
    }
}

/// A staircase whose step lengths read the same from both ends, with the
/// involution reflecting it. Zero steps gives the unit complex.
pub fn random_staircase<R: Rng>(rng: &mut R, steps: usize, max_len: i64) -> Arc<IotaComplex> {
    let h: Vec<i64> = (0..steps).map(|_| rng.gen_range(1..=max_len)).collect();
    let v: Vec<i64> = h.iter().rev().copied().collect();
    let total: i64 = h.iter().sum();
    let mut b = Builder { gens: Vec::new(), diff: Vec::new(), iota: Vec::new() };
    let mut corner = b.push(Generator::new("x0", 0, total));
    for i in 0..steps {
        let prev = b.gens[corner].clone();
        let y = Generator::new(format!("y{}", i + 1), prev.maslov - 2 * h[i] + 1, prev.alexander - h[i]);
        let x = Generator::new(format!("x{}", i + 1), y.maslov - 1, y.alexander - v[i]);
        let yi = b.push(y);
        let xi = b.push(x);
        b.diff.push((yi, corner));
        b.diff.push((yi, xi));
        corner = xi;
    }
    let n = b.gens.len();
    b.iota = (0..n).map(|k| (k, n - 1 - k)).collect();
    b.build("staircase")
}

/// Pairs of acyclic boxes, each swapped with its mirror image by the involution.
pub fn random_boxes<R: Rng>(rng: &mut R, pairs: usize, max_side: i64) -> Arc<IotaComplex> {
    let mut b = Builder { gens: Vec::new(), diff: Vec::new(), iota: Vec::new() };
    for k in 0..pairs {
        let p = Generator::new(format!("b{k}p"), rng.gen_range(-3..=3), rng.gen_range(-2..=2));
        let mut local = vec![p.clone()];
        let mut arrows = Vec::new();
        if rng.gen_bool(0.5) {
            let (h, v) = (rng.gen_range(0..=max_side), rng.gen_range(0..=max_side));
            local.push(arrow_target(&p, format!("b{k}q"), h, v));
            arrows.push((0, 1));
        } else {
            // A square with sides h and v; one of them even keeps ΦΨ zero on it.
            let (h, v) = loop {
                let (h, v) = (rng.gen_range(0..=max_side), rng.gen_range(0..=max_side));
                if h * v % 2 == 0 {
                    break (h, v);
                }
            };
            let q = arrow_target(&p, format!("b{k}q"), h, 0);
            let r = arrow_target(&p, format!("b{k}r"), 0, v);
            let s = arrow_target(&q, format!("b{k}s"), 0, v);
            local.extend([q, r, s]);
            arrows.extend([(0, 1), (0, 2), (1, 3), (2, 3)]);
        }
        let start = b.gens.len();
        let m = local.len();
        for g in &local {
            b.push(g.clone());
        }
        for g in &local {
            let name = format!("{}m", g.name);
            b.push(mirror(g, name));
        }
        for &(s, d) in &arrows {
            b.diff.push((start + s, start + d));
            b.diff.push((start + m + s, start + m + d));
        }
        for i in 0..m {
            b.iota.push((start + i, start + m + i));
            b.iota.push((start + m + i, start + i));
        }
    }
    b.build("boxes")
}

/// Conjugates by a product of filtered transvections `x ↦ x + U^k y`.
pub fn random_basis_change<R: Rng>(c: &Arc<IotaComplex>, rng: &mut R, moves: usize) -> Arc<IotaComplex> {
    let n = c.len();
    let gens = c.generators();
    let mut candidates = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (gx, gy) = (&gens[x], &gens[y]);
            if x == y || (gy.maslov - gx.maslov) % 2 != 0 {
                continue;
            }
            let q = (gy.maslov - gx.maslov) / 2;
            if q >= 0 && q >= gy.alexander - gx.alexander {
                candidates.push((x, y));
            }
        }
    }
    let mut phi = BitMatrix::identity(n);
    for _ in 0..moves {
        if let Some(&(x, y)) = candidates.choose(rng) {
            // Column x of the new basis gains y.
            let t = BitMatrix::from_entries(n, n, (0..n).map(|i| (i, i)).chain([(y, x)]));
            phi = phi.try_mul(&t).unwrap();
        }
    }
    let psi = phi.inverse().expect("transvections are invertible");
    let diff = psi.try_mul(c.diff_matrix()).unwrap().try_mul(&phi).unwrap();
    let iota = psi.try_mul(c.iota_matrix()).unwrap().try_mul(&phi).unwrap();
    IotaComplex::new(c.name(), gens.to_vec(), diff, iota, c.auxiliary()).expect("filtered change of basis keeps validity")
}

/// A random valid complex: staircase ⊕ boxes, then a filtered change of basis.
pub fn random_complex_with(seed: u64, params: RandomParams) -> Arc<IotaComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = rng.gen_range(0..=params.max_steps);
    let stair = random_staircase(&mut rng, steps, params.max_step_length);
    let pairs = rng.gen_range(0..=params.max_box_pairs);
    let boxes = random_boxes(&mut rng, pairs, params.max_box_side);
    let n = stair.len() + boxes.len();
    let gens: Vec<Generator> = stair.generators().iter().chain(boxes.generators()).cloned().collect();
    let sum = IotaComplex::new(
        format!("random{seed}"),
        gens,
        stair.diff_matrix().block_diag(boxes.diff_matrix()),
        stair.iota_matrix().block_diag(boxes.iota_matrix()),
        false,
    )
    .expect("block sum of valid complexes");
    debug_assert_eq!(sum.len(), n);
    random_basis_change(&sum, &mut rng, params.basis_moves)
}

pub fn random_complex(seed: u64) -> Arc<IotaComplex> {
    random_complex_with(seed, RandomParams::default())
}
