use nilcx::ceq::{
    complex_equations, complex_forms, d_square_defect, family_instantiate, real_equations, realify_with,
    to_adapted_frame, FamilyId, FamilyParams, Symbol, DIM8_FAMILY_PAIRING,
};
use nilcx::cpx::{integrability_defect, j_compatible_series, nijenhuis};
use nilcx::exactlin::int;
use nilcx::obstruct::{theorem_audit, AuditStatus};
use nilcx::{Acs, CScalar, LieAlgebra, Matrix, Scalar, Subspace};
use num_traits::Zero;
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// fixtures

fn alg(dim: usize, brackets: &[(usize, usize, usize, i64)]) -> LieAlgebra {
    let c: Vec<_> = brackets.iter().map(|&(i, j, k, v)| (i - 1, j - 1, k - 1, int(v))).collect();
    LieAlgebra::from_constants(dim, &c).unwrap()
}

/// `(x, y)` 1-based with `J e_x = e_y`.
fn pairs(dim: usize, p: &[(usize, usize)]) -> Acs {
    let p: Vec<_> = p.iter().map(|&(x, y)| (x - 1, y - 1)).collect();
    Acs::from_pairs(dim, &p).unwrap()
}

fn family_pair(family: FamilyId, values: &[(Symbol, i64, i64)]) -> (LieAlgebra, Acs) {
    let mut p = FamilyParams::new(family);
    for &(s, re, im) in values {
        p.set(s, CScalar::new(int(re), int(im))).unwrap();
    }
    realify_with(&family_instantiate(&p), &DIM8_FAMILY_PAIRING).unwrap()
}

/// Nilpotent Lie algebras with an integrable structure.
fn integrable_pool() -> Vec<(LieAlgebra, Acs)> {
    use Symbol::*;
    let ex25 = alg(8, &[(1, 3, 6, 1), (2, 4, 6, 1), (3, 5, 1, -1), (4, 5, 2, -1)]);
    let ex26 = alg(
        10,
        &[(3, 9, 1, 1), (4, 10, 1, 1), (5, 9, 2, 1), (6, 10, 2, 1), (7, 9, 3, 1), (7, 10, 4, 1), (8, 9, 5, 1), (8, 10, 6, 1)],
    );
    let ex318 = alg(8, &[(1, 2, 4, 1), (1, 4, 5, 1), (2, 3, 5, 1), (6, 7, 8, 1)]);
    let h3r3 = alg(6, &[(1, 2, 4, 1)]);
    vec![
        (ex25.clone(), pairs(8, &[(1, 2), (3, 4), (5, 6), (7, 8)])),
        (ex25, pairs(8, &[(1, 2), (3, 4), (5, 8), (7, 6)])),
        (ex26.clone(), pairs(10, &[(7, 1), (8, 2), (3, 4), (5, 6), (9, 10)])),
        (ex26, pairs(10, &[(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)])),
        (ex318, pairs(8, &[(2, 1), (3, 4), (7, 6), (8, 5)])),
        (h3r3, pairs(6, &[(2, 1), (3, 4), (6, 5)])),
        (LieAlgebra::abelian(4), Acs::standard(4).unwrap()),
        family_pair(FamilyId::G2Dim3, &[(C, -1, 0), (E, 1, 0), (G, 1, 0), (N, 0, 1)]),
        family_pair(FamilyId::G2Dim3, &[(B, 0, 1), (C, -1, 0), (D, 1, 0), (G, 1, 0), (L, 1, 0), (N, 0, 1)]),
        family_pair(FamilyId::G2Dim3, &[(B, 1, 0), (H, 1, 0), (N, 0, 1), (S, 1, 0)]),
        family_pair(FamilyId::G2Dim4, &[(A, 0, 2), (D, 1, 0), (E, 0, 1), (L, 1, 0), (N, 1, 0), (S, 1, 0)]),
        family_pair(FamilyId::G2Dim5, &[(B, 1, 0), (M, 0, 1), (T, 1, 0)]),
    ]
}

/// Nilpotent Lie algebras, with or without known structures.
fn lie_pool() -> Vec<LieAlgebra> {
    let mut out: Vec<LieAlgebra> = integrable_pool().into_iter().map(|(g, _)| g).collect();
    out.push(alg(8, &(2..8).map(|i| (1, i, i + 1, 1)).collect::<Vec<_>>()));
    out.push(alg(8, &[(1, 2, 3, 1), (1, 3, 4, 1), (1, 4, 5, 1), (2, 3, 6, 1), (1, 5, 7, 1), (2, 6, 7, 1)]));
    out.push(alg(3, &[(1, 2, 3, 1)]));
    out.push(alg(5, &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 3, 5, 1)]));
    out
}

// ---------------------------------------------------------------------------
// strategies

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3).prop_map(int)
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(scalar(), n)
}

/// Spanning sets of up to `n` vectors; often dependent.
fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    proptest::collection::vec(vector(n), 0..=n).prop_map(move |vs| Subspace::span(n, &vs).unwrap())
}

/// `L U` with unit triangular factors: always invertible, entries stay small.
fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    let entry = || prop_oneof![3 => Just(0i64), 1 => Just(1), 1 => Just(-1)];
    (proptest::collection::vec(entry(), n * n), proptest::collection::vec(entry(), n * n)).prop_map(move |(l, u)| {
        let mut lower = Matrix::identity(n);
        let mut upper = Matrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                if r > c {
                    lower[(r, c)] = int(l[r * n + c]);
                } else if r < c {
                    upper[(r, c)] = int(u[r * n + c]);
                }
            }
        }
        lower.mul(&upper).unwrap()
    })
}

/// Sparse tables `[e_i, e_j] ∈ span{e_k : k > j}`; Jacobi may or may not hold.
fn filtered_table() -> impl Strategy<Value = LieAlgebra> {
    (3usize..=7).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, 0..n, -2i64..=2), 1..=8).prop_map(move |entries| {
            let mut g = LieAlgebra::abelian(n);
            for (a, b, k, v) in entries {
                let (i, j) = (a.min(b), a.max(b));
                if i != j && k > j {
                    g.add_constant(i, j, k, &int(v)).unwrap();
                }
            }
            g
        })
    })
}

/// 2-step algebras with brackets landing in a trailing central block; always Lie.
fn two_step() -> impl Strategy<Value = LieAlgebra> {
    (2usize..=4, 1usize..=3).prop_flat_map(|(gens, center)| {
        let n = gens + center;
        proptest::collection::vec((0..gens, 0..gens, 0..center, -2i64..=2), 0..=6).prop_map(move |entries| {
            let mut g = LieAlgebra::abelian(n);
            for (a, b, k, v) in entries {
                if a < b {
                    g.add_constant(a, b, gens + k, &int(v)).unwrap();
                }
            }
            g
        })
    })
}

/// A pool algebra moved to a random basis.
fn lie_algebra() -> impl Strategy<Value = LieAlgebra> {
    let pool = lie_pool();
    (0..pool.len()).prop_flat_map(move |k| {
        let g = pool[k].clone();
        invertible(g.dim()).prop_map(move |p| g.change_basis(&p).unwrap())
    })
}

/// A pool algebra together with a copy in another basis.
fn lie_pool_moved() -> impl Strategy<Value = (LieAlgebra, LieAlgebra)> {
    let pool = lie_pool();
    (0..pool.len()).prop_flat_map(move |k| {
        let g = pool[k].clone();
        invertible(g.dim()).prop_map(move |p| (g.clone(), g.change_basis(&p).unwrap()))
    })
}

fn integrable_with_basis() -> impl Strategy<Value = ((LieAlgebra, Acs), Matrix)> {
    integrable_pair().prop_flat_map(|pair| {
        let n = pair.0.dim();
        (Just(pair), invertible(n))
    })
}

/// An integrable pool pair moved to a random basis.
fn integrable_pair() -> impl Strategy<Value = (LieAlgebra, Acs)> {
    let pool = integrable_pool();
    (0..pool.len()).prop_flat_map(move |k| {
        let (g, j) = pool[k].clone();
        invertible(g.dim()).prop_map(move |p| (g.change_basis(&p).unwrap(), j.change_basis(&p).unwrap()))
    })
}

/// A Lie algebra with an arbitrary almost complex structure `P J0 P⁻¹`;
/// usually not integrable unless the algebra is abelian.
fn random_pair() -> impl Strategy<Value = (LieAlgebra, Acs)> {
    let pool: Vec<LieAlgebra> = lie_pool().into_iter().filter(|g| g.dim() % 2 == 0).collect();
    (0..pool.len()).prop_flat_map(move |k| {
        let g = pool[k].clone();
        let n = g.dim();
        invertible(n).prop_map(move |p| (g.clone(), Acs::standard(n).unwrap().change_basis(&p).unwrap()))
    })
}

fn mixed_pair() -> impl Strategy<Value = (LieAlgebra, Acs)> {
    prop_oneof![integrable_pair(), random_pair()]
}

fn apply(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    m.mul_vec(v).unwrap()
}

// ---------------------------------------------------------------------------
// exact linear algebra

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rref_is_idempotent(rows in proptest::collection::vec(vector(5), 1..6)) {
        let m = Matrix::from_rows(5, rows).unwrap();
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        prop_assert_eq!(r.rank, r.pivots.len());
        // rank-nullity
        prop_assert_eq!(r.rank + Subspace::kernel(&m).dim(), 5);
    }

    #[test]
    fn sum_and_intersection_dimension_formula(a in subspace(6), b in subspace(6)) {
        let sum = a.sum(&b).unwrap();
        let cap = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), a.dim() + b.dim());
        for v in cap.basis_vectors() {
            prop_assert!(a.contains(&v).unwrap() && b.contains(&v).unwrap());
        }
        prop_assert!(a.is_subspace_of(&sum).unwrap() && b.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn span_is_canonical(vs in proptest::collection::vec(vector(5), 1..5), p in invertible(4)) {
        // Recombining generators by an invertible matrix leaves the subspace unchanged.
        let k = vs.len();
        let mut mixed = Vec::new();
        for r in 0..k {
            let mut w = vec![Scalar::zero(); 5];
            for (c, v) in vs.iter().enumerate() {
                let coeff = if r < 4 && c < 4 { p[(r, c)].clone() } else if r == c { int(1) } else { Scalar::zero() };
                for (x, y) in w.iter_mut().zip(v) {
                    *x += &coeff * y;
                }
            }
            mixed.push(w);
        }
        prop_assert_eq!(Subspace::span(5, &vs).unwrap(), Subspace::span(5, &mixed).unwrap());
    }
}

// ---------------------------------------------------------------------------
// Lie algebras

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// The two routes agree term by term: the coefficient of `e^{jkl}` in
    /// `d(de^i)` is the `e_i` component of `Jac(e_j, e_k, e_l)`.
    #[test]
    fn d_squared_matches_jacobi(g in prop_oneof![filtered_table(), two_step(), lie_algebra()]) {
        let jac = g.jacobi_defect();
        let d2 = d_square_defect(&real_equations(&g));
        prop_assert_eq!(jac.is_empty(), d2.is_empty());
        let mut from_jac = Vec::new();
        for d in &jac {
            for (i, c) in d.defect.iter().enumerate() {
                if !c.is_zero() {
                    from_jac.push((i, d.triple, c.clone()));
                }
            }
        }
        let mut from_d2: Vec<_> = d2.into_iter().map(|t| (t.form, t.triple, t.coeff)).collect();
        from_jac.sort();
        from_d2.sort();
        prop_assert_eq!(from_d2, from_jac);
    }

    #[test]
    fn ascending_type_is_basis_independent((g, h) in lie_pool_moved()) {
        prop_assert_eq!(h.ascending_type().unwrap(), g.ascending_type().unwrap());
        prop_assert!(h.is_lie_algebra());
    }

    #[test]
    fn center_and_series_of_products_add(a in lie_algebra(), b in two_step()) {
        let prod = a.direct_product(&b);
        prop_assert_eq!(prod.center().unwrap().dim(), a.center().unwrap().dim() + b.center().unwrap().dim());
        let (sa, sb, sp) = (
            a.ascending_central_series().unwrap(),
            b.ascending_central_series().unwrap(),
            prod.ascending_central_series().unwrap(),
        );
        for k in 0..sp.terms.len() {
            prop_assert_eq!(sp.term(k).dim(), sa.term(k).dim() + sb.term(k).dim());
        }
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(
        g in lie_algebra(),
        level in 1usize..4,
        central in proptest::collection::vec(scalar(), 4),
        x in vector(10),
        y in vector(10),
    ) {
        let n = g.dim();
        let series = g.ascending_central_series().unwrap();
        // Either a term of the central series or a line inside the center.
        let ideal = if central[0].is_zero() {
            series.term(level).clone()
        } else {
            let center = series.term(1);
            let mut v = vec![Scalar::zero(); n];
            for (c, b) in central.iter().zip(center.basis_vectors()) {
                for (vi, bi) in v.iter_mut().zip(&b) {
                    *vi += c * bi;
                }
            }
            Subspace::span(n, &[v]).unwrap()
        };
        prop_assert!(g.is_ideal(&ideal).unwrap());
        let q = g.quotient(&ideal).unwrap();
        prop_assert_eq!(q.algebra.dim(), n - ideal.dim());
        prop_assert!(q.algebra.is_lie_algebra());
        let (x, y) = (&x[..n], &y[..n]);
        let lhs = apply(&q.projection, &g.bracket(x, y).unwrap());
        let rhs = q.algebra.bracket(&apply(&q.projection, x), &apply(&q.projection, y)).unwrap();
        prop_assert_eq!(lhs, rhs);
        // the section is a right inverse of the projection
        prop_assert_eq!(q.projection.mul(&q.section).unwrap(), Matrix::identity(q.algebra.dim()));
    }
}

// ---------------------------------------------------------------------------
// almost complex structures

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn nijenhuis_is_antisymmetric((g, j) in mixed_pair(), x in vector(10), y in vector(10)) {
        let n = g.dim();
        let (x, y) = (&x[..n], &y[..n]);
        let a = nijenhuis(&g, &j, x, y).unwrap();
        let b = nijenhuis(&g, &j, y, x).unwrap();
        prop_assert!(a.iter().zip(&b).all(|(p, q)| (p + q).is_zero()));
        // N_J(Jx, y) = -J N_J(x, y)
        let jx = j.apply(x).unwrap();
        let lhs = nijenhuis(&g, &j, &jx, y).unwrap();
        let rhs: Vec<Scalar> = j.apply(&a).unwrap().into_iter().map(|v| -v).collect();
        prop_assert_eq!(lhs, rhs);
    }

    /// Integrability read two ways: the Nijenhuis tensor on basis pairs, and
    /// the `(0,2)` block of the complex structure equations in an adapted frame.
    #[test]
    fn no_02_part_iff_nijenhuis_vanishes((g, j) in mixed_pair()) {
        let defect = integrability_defect(&g, &j).unwrap();
        let (g2, j2, pairing) = to_adapted_frame(&g, &j).unwrap();
        let eqs = complex_forms(&g2, &j2, &pairing).unwrap();
        prop_assert_eq!(eqs.has_no_02_part(), defect.is_empty());
        if defect.is_empty() {
            // and the equations realify back to the adapted pair
            let (g3, j3) = realify_with(&complex_equations(&g2, &j2, &pairing).unwrap(), &pairing).unwrap();
            prop_assert_eq!(g3, g2);
            prop_assert_eq!(j3, j2);
        }
    }

    #[test]
    fn first_j_term_is_center_meet_j_center((g, j) in integrable_pair()) {
        let c = j_compatible_series(&g, &j).unwrap();
        let center = g.center().unwrap();
        let expected = center.intersect(&j.image(&center).unwrap()).unwrap();
        prop_assert_eq!(c.term(1), &expected);
        // every a_k(J) is J-invariant and sits inside g_k
        let series = g.ascending_central_series().unwrap();
        for k in 0..c.j_series.len() {
            prop_assert!(j.is_invariant(c.term(k)).unwrap());
            prop_assert!(c.term(k).is_subspace_of(series.term(k)).unwrap());
        }
    }

    #[test]
    fn classification_is_basis_independent(((g, j), p) in integrable_with_basis()) {
        let a = j_compatible_series(&g, &j).unwrap();
        let b = j_compatible_series(&g.change_basis(&p).unwrap(), &j.change_basis(&p).unwrap()).unwrap();
        prop_assert_eq!(a.kind, b.kind);
        prop_assert_eq!(a.dims(), b.dims());
    }

    #[test]
    fn audit_never_fails((g, j) in integrable_pair()) {
        for check in theorem_audit(&g, &j).unwrap() {
            prop_assert_ne!(check.status, AuditStatus::Fail, "{}: {}", check.rule, check.detail);
        }
    }
}

#[test]
fn random_structures_hit_both_outcomes() {
    // Guard against a generator that only ever yields one side of the equivalence.
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let (mut yes, mut no) = (0, 0);
    for _ in 0..200 {
        let (g, j) = mixed_pair().new_tree(&mut runner).unwrap().current();
        if integrability_defect(&g, &j).unwrap().is_empty() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes >= 40 && no >= 40, "integrable {yes}, not {no}");
}
