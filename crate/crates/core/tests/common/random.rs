//! Seeded generators for small random instances.

use std::sync::Arc;

use frelat_core::dual::DualFreInstance;
use frelat_core::{
    enumerate_reducts, sup_compose, BuiltinTriple, Context, Frame, FreInstance, Matrix, Sigma,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn frame<R: Rng>(rng: &mut R, n: u32) -> Arc<Frame> {
    let mut kinds = BuiltinTriple::ALL.to_vec();
    kinds.shuffle(rng);
    let keep = rng.gen_range(1..=kinds.len());
    Arc::new(Frame::with_builtins(n, &kinds[..keep]).unwrap())
}

pub fn matrix<R: Rng>(rng: &mut R, n: u32, rows: usize, cols: usize) -> Matrix {
    let levels = (0..rows * cols).map(|_| rng.gen_range(0..=n)).collect();
    Matrix::from_levels(n, rows, cols, levels).unwrap()
}

fn indices<R: Rng>(rng: &mut R, len: usize, bound: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..bound)).collect()
}

/// Context with `|A|, |B| ≤ 4`, `n ≤ 6` and a random kind of σ.
pub fn context<R: Rng>(rng: &mut R) -> Context {
    let n = rng.gen_range(1..=6);
    let frame = frame(rng, n);
    let (a, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let relation = matrix(rng, n, a, b);
    let t = frame.triples().len();
    let sigma = match rng.gen_range(0..3) {
        0 => Sigma::PerObject(indices(rng, b, t)),
        1 => Sigma::PerAttribute(indices(rng, a, t)),
        _ => Sigma::PerCell(indices(rng, a * b, t)),
    };
    Context::anonymous(frame, relation, sigma).unwrap()
}

/// A system `R ⊙σ X = T` built from a random `X`, hence solvable, with the
/// brute-force search space `(n+1)^{|V|·|W|}` at most `budget`.
pub fn solvable_fre<R: Rng>(rng: &mut R, max_unknowns: usize, budget: u128) -> FreInstance {
    loop {
        let n = rng.gen_range(1..=6);
        let u = rng.gen_range(1..=4);
        let v = rng.gen_range(1..=max_unknowns);
        let w = if rng.gen_bool(0.25) { 2 } else { 1 };
        if u128::from(n + 1).pow((v * w) as u32) > budget {
            continue;
        }
        let frame = frame(rng, n);
        let sigma = indices(rng, v, frame.triples().len());
        let r = matrix(rng, n, u, v);
        let x = matrix(rng, n, v, w);
        let t = sup_compose(&frame, &r, &x, &sigma).unwrap();
        return FreInstance::anonymous(frame, r, sigma, t).unwrap();
    }
}

/// An unsolvable system with a feasible reduct: a solvable system whose
/// right-hand side is perturbed outside one of its reducts.
pub fn unsolvable_with_feasible_reduct<R: Rng>(rng: &mut R) -> (FreInstance, Vec<usize>) {
    loop {
        let fre = solvable_fre(rng, 3, u128::MAX);
        let reducts = enumerate_reducts(fre.associated_context());
        let keep = reducts.choose(rng).unwrap().clone();
        let outside: Vec<usize> = (0..fre.rows().len()).filter(|u| !keep.contains(u)).collect();
        if outside.is_empty() {
            continue;
        }
        let n = fre.granularity();
        let mut rows = fre.rhs().to_rows();
        for &u in &outside {
            for cell in rows[u].iter_mut() {
                if rng.gen_bool(0.7) {
                    *cell = rng.gen_range(0..=n);
                }
            }
        }
        let broken = fre.with_rhs(Matrix::from_rows(n, &rows).unwrap()).unwrap();
        if !broken.is_solvable() {
            return (broken, keep);
        }
    }
}

/// A solvable `X ⊙σ S = T` from a random `X`, over the given frame kinds.
pub fn solvable_dual<R: Rng>(rng: &mut R, kinds: &[BuiltinTriple]) -> DualFreInstance {
    let n = rng.gen_range(1..=4);
    let frame = Arc::new(Frame::with_builtins(n, kinds).unwrap());
    let u = rng.gen_range(1..=2);
    let v = rng.gen_range(1..=3);
    let w = rng.gen_range(1..=3);
    let sigma = indices(rng, v, kinds.len());
    let s = matrix(rng, n, v, w);
    let x = matrix(rng, n, u, v);
    let t = frelat_core::dual::dual_compose(&frame, &x, &s, &sigma).unwrap();
    DualFreInstance::anonymous(frame, s, sigma, t).unwrap()
}

/// A dual system with arbitrary right-hand side (usually unsolvable).
pub fn random_dual<R: Rng>(rng: &mut R, kinds: &[BuiltinTriple]) -> DualFreInstance {
    let fre = solvable_dual(rng, kinds);
    let n = fre.granularity();
    let t = matrix(rng, n, fre.rhs().rows(), fre.rhs().cols());
    fre.with_rhs(t).unwrap()
}
