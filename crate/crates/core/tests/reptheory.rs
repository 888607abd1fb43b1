use bell_frt::bellmodels::BellState;
use bell_frt::freealg::Generator;
use bell_frt::linalg::{FieldMatrix, FieldVector};
use bell_frt::reptheory::{
    composition_series, coproduct_rep, decompose, eigen_analysis, invariant_closure, ladder_check, local_unitary_from_bell,
    make_family, schmidt, Decomposition, FamilyKind, LadderKind, Representation, Subspace,
};
use bell_frt::scalar::FieldElement;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn gauss(re: i64, im: i64) -> FieldElement {
    &fe(re) + &(&FieldElement::i() * &fe(im))
}

fn fam(kind: FamilyKind, v: &[FieldElement]) -> Representation {
    make_family(kind, &kind.positional(v).unwrap()).unwrap().verify().unwrap()
}

fn example_one(l: FieldElement, lp: FieldElement) -> Representation {
    coproduct_rep(&fam(FamilyKind::Fermion, &[fe(1), l]), &fam(FamilyKind::Fermion, &[fe(1), lp])).unwrap()
}

fn example_two() -> Representation {
    coproduct_rep(&fam(FamilyKind::PauliScalar, &[fe(1), fe(2)]), &fam(FamilyKind::PauliScalar, &[fe(1), fe(3)])).unwrap()
}

fn ket(k: usize) -> FieldVector {
    let mut v = vec![fe(0); 4];
    v[k] = fe(1);
    v
}

fn lin(terms: &[(&FieldElement, &FieldVector)]) -> FieldVector {
    let mut out = vec![fe(0); 4];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o = &*o + &(*c * x);
        }
    }
    out
}

/// χ₁, χ₂, τ₁, τ₂ as combinations (ψ ± iφ)/√2 of the Bell states.
fn chi_tau() -> [FieldVector; 4] {
    let h = FieldElement::inv_sqrt2();
    let ih = &FieldElement::i() * &h;
    let mih = -&ih;
    let [pp, pm, fp, fm] = BellState::ALL.map(|s| s.vector());
    [
        lin(&[(&h, &pp), (&ih, &fp)]),
        lin(&[(&h, &pm), (&mih, &fm)]),
        lin(&[(&h, &pm), (&ih, &fm)]),
        lin(&[(&h, &pp), (&mih, &fp)]),
    ]
}

fn scaled(v: &FieldVector, c: &FieldElement) -> FieldVector {
    v.iter().map(|x| x * c).collect()
}

#[test]
fn example_one_actions_and_closures() {
    let r = example_one(fe(2), fe(3));
    let b = r.image(Generator::B);
    // Δ(b̂)|11⟩ = −(λ′|01⟩ − λ|10⟩)
    assert_eq!(b.apply(&ket(3)), lin(&[(&fe(-3), &ket(1)), (&fe(2), &ket(2))]));
    let (a, d) = (r.image(Generator::A), r.image(Generator::D));
    assert_eq!(a.mul(a), d.mul(d));
    assert_eq!(a.mul(d), d.mul(a));
    assert_eq!(a.apply(&ket(3)), lin(&[(&fe(1), &ket(0)), (&fe(6), &ket(3))]));

    assert_eq!(invariant_closure(&r, &[ket(0)]), Subspace::span(4, &[ket(0)]));
    assert_eq!(invariant_closure(&r, &[ket(1)]), Subspace::span(4, &[ket(0), ket(1)]));
    assert!(invariant_closure(&r, &[ket(3)]).is_full());
}

#[test]
fn example_one_series_and_indecomposability() {
    let r = example_one(fe(2), fe(3));
    let s = composition_series(&r).unwrap();
    let chain: Vec<Subspace> = (0..=4).map(|k| Subspace::span(4, &(0..k).map(ket).collect::<Vec<_>>())).collect();
    assert_eq!(s.chain, chain);
    assert_eq!(s.verdicts.len(), 4);
    assert!(s.verdicts.iter().all(|v| v.is_irreducible()));
    assert!(s.alternatives.iter().any(|c| c[2] == Subspace::span(4, &[ket(0), ket(2)])));
    let d = decompose(&r, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert!(d.is_indecomposable());
    // no sub-chain member is a direct summand either
    for sub in &s.chain[2..] {
        let rr = r.restrict(sub).unwrap();
        assert!(decompose(&rr, &mut ChaCha8Rng::seed_from_u64(3)).unwrap().is_indecomposable(), "{sub}");
    }
}

#[test]
fn second_common_eigenvector() {
    for (l, lp) in [(2, 3), (-1, 5), (3, 3)] {
        let r = example_one(fe(l), fe(lp));
        let x = fe(l * lp);
        let one_minus = &fe(1) - &x;
        let psi = lin(&[(&fe(-1), &ket(0)), (&one_minus, &ket(3))]);
        let phi1 = lin(&[(&fe(lp), &ket(1)), (&fe(-l), &ket(2))]);
        assert_eq!(r.image(Generator::A).apply(&psi), scaled(&psi, &x));
        assert_eq!(r.image(Generator::D).apply(&psi), scaled(&psi, &x));
        assert_eq!(r.image(Generator::B).apply(&psi), scaled(&phi1, &-&one_minus));
        assert_eq!(r.image(Generator::C).apply(&psi), scaled(&phi1, &one_minus));
    }
}

#[test]
fn ladders() {
    let r = example_one(fe(2), fe(3));
    assert!(ladder_check(&r, LadderKind::Phi, 5).unwrap().all_hold());
    assert!(ladder_check(&r, LadderKind::Psi, 4).is_err());
    let half = FieldElement::from_ratio(1, 2);
    let r = example_one(fe(2), half);
    let rep = ladder_check(&r, LadderKind::Psi, 4).unwrap();
    assert!(rep.all_hold());
    assert_eq!(rep.checks.len(), 16);
    let r = example_one(fe(1), fe(1));
    assert!(ladder_check(&r, LadderKind::Phi, 3).unwrap().all_hold());
}

#[test]
fn example_two_eigenvalues() {
    let r = example_two();
    let z = gauss(1, -6);
    let zb = z.conj();
    let [c1, c2, t1, t2] = chi_tau();
    let d = r.image(Generator::D);
    assert_eq!(d.apply(&c1), scaled(&c1, &z));
    assert_eq!(d.apply(&c2), scaled(&c2, &-&z));
    assert_eq!(d.apply(&t1), scaled(&t1, &-&zb));
    assert_eq!(d.apply(&t2), scaled(&t2, &zb));

    let eig = eigen_analysis(&r, Generator::D).unwrap();
    let mut vals: Vec<String> = eig.iter().map(|e| e.eigenvalue.to_string()).collect();
    vals.sort();
    let mut expect: Vec<String> = [z.clone(), -&z, -&zb, zb.clone()].iter().map(|x| x.to_string()).collect();
    expect.sort();
    assert_eq!(vals, expect);
    let of = |x: &FieldElement| eig.iter().find(|e| &e.eigenvalue == x).unwrap().eigenvectors.clone();
    assert_eq!(of(&z), Subspace::span(4, std::slice::from_ref(&c1)));
    assert_eq!(of(&zb), Subspace::span(4, std::slice::from_ref(&t2)));

    let ea = eigen_analysis(&r, Generator::A).unwrap();
    assert_eq!(ea.len(), 2);
    let sp = |x: &FieldElement| ea.iter().find(|e| &e.eigenvalue == x).unwrap().eigenvectors.clone();
    assert_eq!(sp(&z), Subspace::span(4, &[c1.clone(), c2.clone()]));
    assert_eq!(sp(&zb), Subspace::span(4, &[t1.clone(), t2.clone()]));
    assert!(ea.iter().all(|e| e.multiplicity == 2));

    let id = fam(FamilyKind::Fermion, &[fe(1), fe(1)]);
    let ei = eigen_analysis(&id, Generator::A).unwrap();
    assert_eq!(ei.len(), 1);
    assert!(ei[0].eigenvectors.is_full());
}

#[test]
fn example_two_cyclic_summands() {
    let r = example_two();
    let w = gauss(2, -3);
    let wb = w.conj();
    let [c1, c2, t1, t2] = chi_tau();
    let (b, c) = (r.image(Generator::B), r.image(Generator::C));
    assert_eq!(b.apply(&c1), scaled(&t1, &-&wb));
    assert_eq!(b.apply(&t1), scaled(&c1, &w));
    assert_eq!(c.apply(&c1), scaled(&t1, &wb));
    assert_eq!(c.apply(&t1), scaled(&c1, &w));
    assert_eq!(b.apply(&c2), scaled(&t2, &wb));
    assert_eq!(b.apply(&t2), scaled(&c2, &-&w));
    assert_eq!(c.apply(&c2), scaled(&t2, &wb));
    assert_eq!(c.apply(&t2), scaled(&c2, &w));

    // block form in the basis χ₁, χ₂, τ₂, τ₁
    let p = FieldMatrix::from_columns(&[c1.clone(), c2.clone(), t2.clone(), t1.clone()]);
    let pinv = p.inverse().unwrap();
    let z = gauss(1, -6);
    let m2 = |a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement| FieldMatrix::from_rows(vec![vec![a, b], vec![c, d]]);
    let i = FieldElement::i();
    let sy = m2(fe(0), -&i, i.clone(), fe(0));
    let diag_z = m2(z.clone(), fe(0), fe(0), z.conj());
    let off_w = m2(fe(0), w.clone(), wb.clone(), fe(0));
    let expect = [
        diag_z.kron(&FieldMatrix::identity(2)),
        off_w.kron(&sy.scale(&i)),
        off_w.kron(&m2(fe(0), fe(1), fe(1), fe(0))),
        diag_z.kron(&m2(fe(1), fe(0), fe(0), fe(-1))),
    ];
    for (g, e) in Generator::unprimed().into_iter().zip(&expect) {
        assert_eq!(&pinv.mul(r.image(g)).mul(&p), e, "{g}");
    }

    let Decomposition::Summands(parts) = decompose(&r, &mut ChaCha8Rng::seed_from_u64(11)).unwrap() else {
        panic!("example two should split")
    };
    let mut expect = vec![Subspace::span(4, &[c1.clone(), t1.clone()]), Subspace::span(4, &[c2.clone(), t2.clone()])];
    expect.sort();
    assert_eq!(parts, expect);

    let s = composition_series(&r).unwrap();
    assert_eq!(s.length(), 2);
    assert!(expect.contains(&s.chain[1]));
}

#[test]
fn decompose_is_seed_deterministic() {
    let r = example_two();
    let a = decompose(&r, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    let b = decompose(&r, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn local_unitaries() {
    let h = FieldElement::inv_sqrt2();
    let i = FieldElement::i();
    let id = FieldMatrix::identity(2);
    let m2 = |a: i64, b: FieldElement, c: FieldElement, d: i64| FieldMatrix::from_rows(vec![vec![fe(a), b], vec![c, fe(d)]]);
    let sx = m2(0, fe(1), fe(1), 0);
    let sy = m2(0, -&i, i.clone(), 0);
    let sz = m2(1, fe(0), fe(0), -1);
    let printed = [
        id.add(&sx.scale(&i)).scale(&h),
        sz.sub(&sy).scale(&h),
        sz.add(&sy).scale(&h),
        id.sub(&sx.scale(&i)).scale(&h),
    ];
    let states = chi_tau();
    let us: Vec<FieldMatrix> = states.iter().map(|s| local_unitary_from_bell(s).unwrap()).collect();
    assert_eq!(us, printed);
    for (s, u) in states.iter().zip(&us) {
        assert!(schmidt(s).unwrap().maximally_entangled);
        assert_eq!(&id.kron(u).apply(&BellState::PsiPlus.vector()), s);
    }
    for (a, ua) in us.iter().enumerate() {
        for (b, ub) in us.iter().enumerate() {
            let t = ua.adjoint().mul(ub).trace();
            assert_eq!(t, if a == b { fe(2) } else { fe(0) });
        }
    }
    assert_eq!(local_unitary_from_bell(&BellState::PsiPlus.vector()).unwrap(), id);
}
