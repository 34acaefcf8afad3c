use crate::module::{unrolled_vertex, Entry, FiltModule, Tag};
use crate::ModuleError;

/// Image of a `B_G` arrow in the skew group algebra `B * G`, as a `B`
/// arrow and a power of the rotation `g`.
fn skew_image(a: usize, n0: usize, n: usize) -> (usize, i64) {
    let j = a / 2;
    let j = if j == 0 { n0 } else { j };
    match (a % 2, j) {
        (0, 1) => (2 * (1 % n), -1),
        (0, _) => (2 * (j % n), 0),
        (_, 1) => (2 * ((n0 + 1) % n) + 1, 1),
        _ => (2 * (j % n) + 1, 0),
    }
}

/// Induces a rank-one `B(k, n)` module to `B_G` through the skew group
/// algebra: the result is `e (B*G ⊗_B M)` with generator `l` at vertex `i`
/// the tensor `(e_i ⊗ g^{-l}) ⊗ 1_{g^l(i)}`, where `g` rotates by `n0`.
pub fn induce(m: &FiltModule, n0: usize) -> Result<FiltModule, ModuleError> {
    let Tag::B { k, n } = m.tag else { return Err(ModuleError::WrongAlgebra) };
    if n0 == 0 || n % n0 != 0 || m.degrees.iter().any(|g| g.len() != 1) {
        return Err(ModuleError::WrongAlgebra);
    }
    let d = n / n0;
    let tag = Tag::BG { n0, k, n };
    let degrees: Vec<Vec<i64>> =
        (0..n0).map(|v| (0..d).map(|l| m.degrees[unrolled_vertex(v, l, n0, d)][0]).collect()).collect();
    let mut arrows = vec![Vec::new(); 2 * n0];
    for (a, out) in arrows.iter_mut().enumerate() {
        let (src, dst) = if a % 2 == 0 { ((a / 2 + n0 - 1) % n0, a / 2) } else { (a / 2, (a / 2 + n0 - 1) % n0) };
        let (b, s) = skew_image(a, n0, n);
        for l in 0..d {
            let c = unrolled_vertex(src, l, n0, d);
            let shift = (l as i64 - s).rem_euclid(d as i64) as usize;
            let b_shifted = (b + 2 * shift * n0) % (2 * n);
            let (from, to) = m.arrow_ends(b_shifted);
            if from != c {
                return Err(ModuleError::Shape);
            }
            let l2 = shift;
            if unrolled_vertex(dst, l2, n0, d) != to {
                return Err(ModuleError::Shape);
            }
            for e in &m.arrows[b_shifted] {
                out.push(Entry { row: l2, col: l, coeff: e.coeff.clone(), exp: e.exp });
            }
        }
    }
    let out = FiltModule { tag, truncation: m.truncation, degrees, arrows };
    out.check()?;
    Ok(out)
}
