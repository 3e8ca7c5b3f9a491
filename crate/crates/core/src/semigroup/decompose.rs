use num_traits::{One, Zero};

use crate::algebra::{cyclotomic_poly, unit_root_split, Matrix, Rational, RowBasis};

/// A diagonal block of a block upper-triangular form, with its own generator restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub generators: Vec<Matrix>,
    /// The block's generators span the full matrix algebra, so no invariant subspace exists
    /// over any field extension.
    pub irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Irreducible,
    /// The algebra is proper but no rational invariant subspace was located.
    NoneFound,
    /// `basis^{-1} g basis` is block upper triangular with the listed diagonal blocks.
    Chain { basis: Matrix, blocks: Vec<Block> },
}

fn flatten(m: &Matrix) -> Vec<Rational> {
    m.to_rows().into_iter().flatten().collect()
}

fn unflatten(v: &[Rational], n: usize) -> Matrix {
    Matrix::from_rows(v.chunks(n).map(<[Rational]>::to_vec).collect())
}

/// Basis of the algebra spanned by the identity and all products of the generators.
pub fn algebra_basis(generators: &[Matrix]) -> Vec<Matrix> {
    let n = generators[0].rows();
    let mut basis = RowBasis::new(n * n);
    basis.insert(flatten(&Matrix::identity(n)));
    let mut i = 0;
    while i < basis.len() {
        let x = unflatten(&basis.vectors()[i], n);
        for g in generators {
            basis.insert(flatten(&x.mul(g)));
        }
        i += 1;
    }
    basis.vectors().iter().map(|v| unflatten(v, n)).collect()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); n];
    e[i] = Rational::one();
    e
}

/// Candidate vectors: standard basis, kernels of algebra elements and of their cyclotomic
/// factors, and images.
fn candidates(alg: &[Matrix]) -> Vec<Vec<Rational>> {
    let n = alg[0].rows();
    let mut out: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
    for x in alg {
        out.extend(x.kernel());
        if let Ok(split) = unit_root_split(&x.char_poly()) {
            for &(c, _) in &split.cyclo {
                out.extend(x.eval_poly(&cyclotomic_poly(c)).kernel());
            }
        }
        out.extend((0..n).map(|j| x.column(j)));
    }
    out.retain(|v| v.iter().any(|c| !c.is_zero()));
    out
}

/// Proper nonzero subspace `U` with `a U ⊆ U` for every algebra element `a`, as column vectors.
fn invariant_subspace(alg: &[Matrix]) -> Option<Vec<Vec<Rational>>> {
    let n = alg[0].rows();
    let orbit = |y: &[Rational], mats: &[Matrix]| {
        let mut b = RowBasis::new(n);
        for a in mats {
            b.insert(a.apply(y));
        }
        b
    };
    for y in candidates(alg) {
        let b = orbit(&y, alg);
        if !b.is_empty() && b.len() < n {
            return Some(b.vectors().to_vec());
        }
    }
    // A row-invariant subspace W gives the column-invariant annihilator of W.
    let dual: Vec<Matrix> = alg.iter().map(Matrix::transpose).collect();
    for y in candidates(&dual) {
        let b = orbit(&y, &dual);
        if !b.is_empty() && b.len() < n {
            return Some(b.to_matrix().kernel());
        }
    }
    None
}

fn sub_block(m: &Matrix, start: usize, size: usize) -> Matrix {
    Matrix::from_rows((start..start + size).map(|i| m.row(i)[start..start + size].to_vec()).collect())
}

/// Splits the generators into a block upper-triangular form over the rationals as far as the
/// invariant-subspace search allows.
pub fn invariant_decomposition(generators: &[Matrix]) -> Decomposition {
    let n = generators.first().map_or(0, Matrix::rows);
    if n <= 1 {
        return Decomposition::Irreducible;
    }
    let alg = algebra_basis(generators);
    if alg.len() == n * n {
        return Decomposition::Irreducible;
    }
    let Some(u) = invariant_subspace(&alg) else { return Decomposition::NoneFound };
    let m = u.len();
    let mut cols = RowBasis::new(n);
    for v in &u {
        cols.insert(v.clone());
    }
    for i in 0..n {
        cols.insert(unit(n, i));
    }
    let t = cols.to_matrix().transpose();
    let tinv = t.inverse().expect("basis change is invertible");
    let conj: Vec<Matrix> = generators.iter().map(|g| tinv.mul(g).mul(&t)).collect();
    let mut basis = Matrix::zeros(n, n);
    let mut blocks = Vec::new();
    for (start, size) in [(0, m), (m, n - m)] {
        let gens: Vec<Matrix> = conj.iter().map(|g| sub_block(g, start, size)).collect();
        match invariant_decomposition(&gens) {
            Decomposition::Irreducible => {
                basis.put_block(start, start, &Matrix::identity(size));
                blocks.push(Block { start, generators: gens, irreducible: true });
            }
            Decomposition::NoneFound => {
                basis.put_block(start, start, &Matrix::identity(size));
                blocks.push(Block { start, generators: gens, irreducible: false });
            }
            Decomposition::Chain { basis: b, blocks: inner } => {
                basis.put_block(start, start, &b);
                blocks.extend(inner.into_iter().map(|x| Block { start: x.start + start, ..x }));
            }
        }
    }
    Decomposition::Chain { basis: t.mul(&basis), blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    fn check_triangular(gens: &[Matrix], basis: &Matrix, blocks: &[Block]) {
        let inv = basis.inverse().unwrap();
        for (gi, g) in gens.iter().enumerate() {
            let c = inv.mul(g).mul(basis);
            for b in blocks {
                let size = b.generators[0].rows();
                for i in b.start + size..c.rows() {
                    for j in b.start..b.start + size {
                        assert!(c.get(i, j).is_zero(), "entry below block");
                    }
                }
                assert_eq!(sub_block(&c, b.start, size), b.generators[gi]);
            }
        }
    }

    #[test]
    fn upper_triangular_splits_at_first_vector() {
        let gens = vec![m(&[&[1, 2], &[0, 3]]), m(&[&[2, 5], &[0, 1]])];
        match invariant_decomposition(&gens) {
            Decomposition::Chain { basis, blocks } => {
                assert_eq!(blocks.len(), 2);
                assert!(basis.get(1, 0).is_zero());
                check_triangular(&gens, &basis, &blocks);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn thue_morse_splits_into_eigenlines() {
        let gens = vec![Matrix::identity(2), m(&[&[0, 1], &[1, 0]])];
        assert_eq!(algebra_basis(&gens).len(), 2);
        match invariant_decomposition(&gens) {
            Decomposition::Chain { basis, blocks } => {
                assert_eq!(blocks.len(), 2);
                check_triangular(&gens, &basis, &blocks);
                let diag: Vec<Rational> = blocks.iter().map(|b| b.generators[1].get(0, 0).clone()).collect();
                assert!(diag.contains(&Rational::one()) && diag.contains(&-Rational::one()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rotation_has_no_rational_subspace() {
        let gens = vec![m(&[&[1, -1], &[1, 1]])];
        assert_eq!(algebra_basis(&gens).len(), 2);
        assert_eq!(invariant_decomposition(&gens), Decomposition::NoneFound);
    }

    #[test]
    fn full_algebra_is_irreducible() {
        let gens = vec![m(&[&[1, 1], &[0, 1]]), m(&[&[1, 0], &[1, 1]])];
        assert_eq!(invariant_decomposition(&gens), Decomposition::Irreducible);
    }
}
