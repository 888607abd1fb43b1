//! Runs the twelve acceptance criteria and prints one PASS/FAIL line for each.
//!
//! Criterion 3 compares against the printed generation table, which disagrees with
//! the matrix it is generated from; that failure is reported, kept, and does not
//! change the exit status. Any other failure, or criterion 3 starting to pass,
//! makes the target fail.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use bell_frt::bellmodels::{
    build_bell, build_r_omega, build_spectral_bell, check_free_fermion, closed_form, evolution_matrix, evolve, exp_series,
    generation_table, BellSign, BellState, EvolutionPoint, OmegaFlag,
};
use bell_frt::freealg::catalogue::{self, as_set};
use bell_frt::freealg::{derive_b_algebra, frt_derive, ideal_member, Generator, Membership, NCPoly};
use bell_frt::linalg::{check_braid_ybe, check_spectral_ybe, Convention, FieldMatrix, FieldVector, SpectralVerdict, SymMatrix};
use bell_frt::reptheory::{
    algebra_relations, check_rep, composition_series, coproduct_rep, decompose, eigen_analysis, ladder_check,
    local_unitary_from_bell, make_family, random_bindings, schmidt, Decomposition, FamilyKind, LadderKind, Representation,
    Subspace,
};
use bell_frt::scalar::{FieldElement, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn fam(kind: FamilyKind, v: &[FieldElement]) -> Representation {
    make_family(kind, &kind.positional(v).expect("arity")).expect("constraints").verify().expect("relations")
}

fn unit_vec(k: usize) -> FieldVector {
    (0..4).map(|i| fe((i == k) as i64)).collect()
}

fn span(vs: &[FieldVector]) -> Subspace {
    Subspace::span(4, vs)
}

fn lin(terms: &[(FieldElement, &FieldVector)]) -> FieldVector {
    let mut out = vec![fe(0); 4];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o = &*o + &(c * x);
        }
    }
    out
}

fn braid_ybe() -> Check {
    let mut names = Vec::new();
    for (name, m) in [
        ("B+", build_bell(BellSign::Plus)),
        ("B-", build_bell(BellSign::Minus)),
        ("R(+1)", build_r_omega(OmegaFlag::PlusOne)),
        ("R(-1)", build_r_omega(OmegaFlag::MinusOne)),
        ("P", SymMatrix::swap()),
    ] {
        ensure(check_braid_ybe(&m).map_err(|e| e.to_string())?.holds(), || format!("{name} fails"))?;
        names.push(name);
    }
    let mut m = build_bell(BellSign::Plus);
    let p = m.params().clone();
    let bumped = m.get(0, 1) + &LaurentPoly::from_int(&p, 1);
    m.set(0, 1, bumped).map_err(|e| e.to_string())?;
    let v = check_braid_ybe(&m).map_err(|e| e.to_string())?;
    ensure(!v.holds(), || "perturbed B+ passes".into())?;
    Ok(format!("{} hold exactly; perturbed B+ fails with a witness", names.join(", ")))
}

fn bell_identities() -> Check {
    for s in [BellSign::Plus, BellSign::Minus] {
        let b = build_bell(s).to_field().ok_or("B is numeric")?;
        let i4 = FieldMatrix::identity(4);
        ensure(b.pow(4) == i4.scale(&fe(-1)), || format!("B{s}^4 != -I"))?;
        ensure(b.pow(8) == i4, || format!("B{s}^8 != I"))?;
        ensure(b == i4.add(&b.pow(2)).scale(&FieldElement::inv_sqrt2()), || format!("B{s} != (I + B^2)/sqrt2"))?;
        ensure(b.adjoint().mul(&b) == i4, || format!("B{s} not unitary"))?;
    }
    Ok("B^4 = -I, B^8 = I, B = (I + B^2)/sqrt2, B^dagger B = I for both signs".into())
}

fn generation() -> Check {
    use BellState::*;
    let printed: [(BellSign, [(i8, BellState); 4]); 2] = [
        (BellSign::Plus, [(1, PsiMinus), (1, PhiMinus), (1, PhiPlus), (1, PsiPlus)]),
        (BellSign::Minus, [(1, PhiMinus), (1, PsiPlus), (-1, PsiMinus), (1, PhiPlus)]),
    ];
    let mut bad = Vec::new();
    for (s, row) in printed {
        let t = generation_table(s).map_err(|e| e.to_string())?;
        for (e, (sign, state)) in t.iter().zip(row) {
            if (e.sign, e.state) != (sign, state) {
                let want = format!("{}{}", if sign < 0 { "-" } else { "" }, state);
                bad.push(format!("B{s}|{}> computed {} printed {want}", e.ket, e.to_string().rsplit(' ').next().unwrap_or("?")));
            }
        }
    }
    ensure(bad.is_empty(), || format!("{} of 8 entries differ: {}", bad.len(), bad.join("; ")))?;
    Ok("all eight signed assignments match".into())
}

fn frt_sets() -> Check {
    let derived = frt_derive(&build_r_omega(OmegaFlag::MinusOne), false, false).map_err(|e| e.to_string())?;
    let printed = as_set(&catalogue::algebra_eight(OmegaFlag::MinusOne));
    ensure(derived.same_relations(&printed), || format!("derived set differs:\n{derived}"))?;
    let six = derived.without(&[catalogue::f1(OmegaFlag::MinusOne), catalogue::f2()]);
    ensure(six.len() == 6, || format!("six-relation subset has {} members", six.len()))?;
    let qinv = LaurentPoly::parse("q^-1", &catalogue::q_params()).map_err(|e| e.to_string())?;
    let rescaled = six.apply_rescaling(&BTreeMap::from([(Generator::C, qinv)])).map_err(|e| e.to_string())?;
    ensure(rescaled.same_relations(&as_set(&catalogue::rescaled_six(OmegaFlag::MinusOne))), || format!("rescaled set differs:\n{rescaled}"))?;
    Ok("8 derived relations equal the printed set; rescaled six equal the printed commutation relations".into())
}

fn gen(g: Generator) -> NCPoly {
    NCPoly::generator(&catalogue::q_params(), g)
}

fn annihilation() -> Check {
    let mut n = 0;
    for w in [OmegaFlag::MinusOne, OmegaFlag::PlusOne] {
        let six = catalogue::algebra_six(w);
        let (f1, f2) = (catalogue::f1(w), catalogue::f2());
        let (a, b, c, d) = (gen(Generator::A), gen(Generator::B), gen(Generator::C), gen(Generator::D));
        let targets = [&a * &f2, &f1 * &a, &d * &f2, &f1 * &d, &b * &f1, &f2 * &b, &c * &f1, &f2 * &c];
        for t in &targets {
            let m = ideal_member(t, &six, 3).map_err(|e| e.to_string())?;
            let cert = m.certificate().ok_or_else(|| format!("omega={}: {t} not found at bound 3", w.value()))?;
            ensure(cert.verify(t, &six), || format!("certificate for {t} does not re-expand"))?;
            n += 1;
        }
    }
    Ok(format!("{n} products are members at bound 3 with verified certificates"))
}

fn spectral() -> Check {
    for s in [BellSign::Plus, BellSign::Minus] {
        let f = build_spectral_bell(s);
        let v = check_spectral_ybe(&f).map_err(|e| e.to_string())?;
        ensure(v == SpectralVerdict::Holds(Convention::Multiplicative), || format!("B{s}(x): {v:?}"))?;
        let ff = check_free_fermion(&f).map_err(|e| e.to_string())?;
        let want = LaurentPoly::parse("(1 + x)^2 + (1 - x)^2", ff.lhs.params()).map_err(|e| e.to_string())?;
        ensure(ff.lhs == want && ff.rhs == want, || format!("free fermion sides {} / {}", ff.lhs, ff.rhs))?;
    }
    Ok("multiplicative YBE holds for B+(x), B-(x); free-fermion sides both equal (1+x)^2 + (1-x)^2".into())
}

fn b_algebra() -> Check {
    let b = derive_b_algebra(true).map_err(|e| e.to_string())?;
    ensure(b.mixed_tt.same_relations(&as_set(&catalogue::mixed_tt())), || "T (x) T' relations differ from the printed list".into())?;
    ensure(b.mixed_t_t.same_relations(&as_set(&catalogue::mixed_t_t())), || "T' (x) T relations differ from the printed list".into())?;
    let all = b.all();
    let (mut member, mut inconclusive, mut trivial) = (0, 0, 0);
    println!("    verdict table (bound 4):");
    for list in [catalogue::b_commutative(), catalogue::b_additional(), catalogue::simplified_tt(), catalogue::simplified_t_t()] {
        for r in list {
            let verdict = if r.poly.is_zero() {
                trivial += 1;
                "trivial (identically zero)".to_string()
            } else {
                match ideal_member(&r.poly, &all, 4).map_err(|e| e.to_string())? {
                    Membership::Member(c) => {
                        ensure(c.verify(&r.poly, &all), || format!("{}: certificate does not re-expand", r.text))?;
                        member += 1;
                        "member, certificate verified".to_string()
                    }
                    Membership::NotFound { bound } => {
                        inconclusive += 1;
                        format!("inconclusive at bound {bound}")
                    }
                }
            };
            println!("      {:<36} {verdict}", r.text);
        }
    }
    Ok(format!("mixed sets match; {member} members, {inconclusive} inconclusive, {trivial} trivial, 0 unverified passes"))
}

fn representations() -> Check {
    let rels = algebra_relations();
    let f1f2: Vec<&NCPoly> =
        rels.relations().iter().filter(|r| r.labels.iter().any(|l| l == "F1" || l == "F2")).map(|r| &r.poly).collect();
    ensure(f1f2.len() == 2, || "F1/F2 missing from the representation relations".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pool = Vec::new();
    for kind in FamilyKind::ALL {
        for _ in 0..20 {
            let bind = random_bindings(kind, &mut rng);
            let r = make_family(kind, &bind).map_err(|e| format!("{kind}: {e}"))?;
            ensure(check_rep(&r, &rels).map_err(|e| e.to_string())?.is_ok(), || format!("{kind} {bind:?} violates a relation"))?;
            for p in &f1f2 {
                ensure(r.evaluate(p).map_err(|e| e.to_string())?.is_zero(), || format!("{kind} does not annihilate {p}"))?;
            }
            pool.push(r.verify().map_err(|e| e.to_string())?);
        }
    }
    let pairs = 50;
    for _ in 0..pairs {
        let (i, j) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
        let c = coproduct_rep(&pool[i], &pool[j]).map_err(|e| e.to_string())?;
        ensure(check_rep(&c, &rels).map_err(|e| e.to_string())?.is_ok(), || format!("coproduct {} fails", c.name()))?;
    }
    Ok(format!("{} family instances (20 per family) and {pairs} coproduct pairs satisfy all 8 relations", pool.len()))
}

fn composition() -> Check {
    let r = coproduct_rep(&fam(FamilyKind::Fermion, &[fe(1), fe(2)]), &fam(FamilyKind::Fermion, &[fe(1), fe(3)])).map_err(|e| e.to_string())?;
    let s = composition_series(&r).map_err(|e| e.to_string())?;
    let expect: Vec<Subspace> = (0..=4).map(|k| span(&(0..k).map(unit_vec).collect::<Vec<_>>())).collect();
    ensure(s.chain == expect, || format!("chain {:?}", s.chain.iter().map(|x| x.to_string()).collect::<Vec<_>>()))?;
    ensure(s.verdicts.len() == 4 && s.verdicts.iter().all(|v| v.is_irreducible()), || "a quotient is reducible".into())?;
    let alt = span(&[unit_vec(0), unit_vec(2)]);
    ensure(s.alternatives.iter().any(|c| c[2] == alt), || "alternative chain through <00,10> missing".into())?;
    let d = decompose(&r, &mut ChaCha8Rng::seed_from_u64(0)).map_err(|e| e.to_string())?;
    ensure(d.is_indecomposable(), || format!("decompose: {d:?}"))?;
    Ok("chain 0 < <00> < <00,01> < <00,01,10> < V, 4 irreducible quotients, alternative through <00,10>, indecomposable".into())
}

fn decomposition() -> Check {
    let r = coproduct_rep(&fam(FamilyKind::PauliScalar, &[fe(1), fe(2)]), &fam(FamilyKind::PauliScalar, &[fe(1), fe(3)]))
        .map_err(|e| e.to_string())?;
    let h = FieldElement::inv_sqrt2();
    let ih = &FieldElement::i() * &h;
    let [pp, pm, fp, fm] = BellState::ALL.map(|s| s.vector());
    let chi1 = lin(&[(h.clone(), &pp), (ih.clone(), &fp)]);
    let chi2 = lin(&[(h.clone(), &pm), (-&ih, &fm)]);
    let tau1 = lin(&[(h.clone(), &pm), (ih.clone(), &fm)]);
    let tau2 = lin(&[(h.clone(), &pp), (-&ih, &fp)]);
    let Decomposition::Summands(parts) = decompose(&r, &mut ChaCha8Rng::seed_from_u64(0)).map_err(|e| e.to_string())? else {
        return Err("reported indecomposable".into());
    };
    let mut want = vec![span(&[chi1.clone(), tau1.clone()]), span(&[chi2.clone(), tau2.clone()])];
    want.sort();
    ensure(parts == want, || format!("summands {:?}", parts.iter().map(|p| p.to_string()).collect::<Vec<_>>()))?;
    // cyclic: b and c exchange chi_i and tau_i
    for (x, y) in [(&chi1, &tau1), (&chi2, &tau2)] {
        for g in [Generator::B, Generator::C] {
            let img = span(&[r.image(g).apply(x)]);
            ensure(img == span(std::slice::from_ref(y)), || format!("{g} does not map a chi onto its tau"))?;
        }
    }
    let z = &fe(1) + &(&FieldElement::i() * &fe(-6));
    let zb = z.conj();
    let d = r.image(Generator::D);
    let oracle = [(&chi1, z.clone()), (&chi2, -&z), (&tau1, -&zb), (&tau2, zb.clone())];
    for (v, l) in &oracle {
        let lv: FieldVector = v.iter().map(|x| x * l).collect();
        ensure(d.apply(v) == lv, || format!("d does not act by {l}"))?;
    }
    let mut got: Vec<String> = eigen_analysis(&r, Generator::D).map_err(|e| e.to_string())?.iter().map(|e| e.eigenvalue.to_string()).collect();
    let mut want: Vec<String> = oracle.iter().map(|(_, l)| l.to_string()).collect();
    got.sort();
    want.sort();
    ensure(got == want, || format!("eigenvalues {got:?}, expected {want:?}"))?;
    let states = [&chi1, &chi2, &tau1, &tau2];
    let mut us = Vec::new();
    for s in states {
        ensure(schmidt(s).map_err(|e| e.to_string())?.maximally_entangled, || "a chi/tau state is not maximally entangled".into())?;
        us.push(local_unitary_from_bell(s).map_err(|e| e.to_string())?);
    }
    for (a, ua) in us.iter().enumerate() {
        for (b, ub) in us.iter().enumerate() {
            let t = ua.adjoint().mul(ub).trace();
            ensure(t == fe(if a == b { 2 } else { 0 }), || format!("tr(U{}^dagger U{}) = {t}", a + 1, b + 1))?;
        }
    }
    Ok(format!("summands {{chi1,tau1}}, {{chi2,tau2}}; d eigenvalues {}; all four maximally entangled; tr(Ui^dagger Uj) = 2 delta_ij", want.join(", ")))
}

fn ladders() -> Check {
    let ex = |l: FieldElement, lp: FieldElement| {
        coproduct_rep(&fam(FamilyKind::Fermion, &[fe(1), l]), &fam(FamilyKind::Fermion, &[fe(1), lp])).expect("verified factors")
    };
    let phi = ladder_check(&ex(fe(2), fe(3)), LadderKind::Phi, 5).map_err(|e| e.to_string())?;
    let psi = ladder_check(&ex(fe(2), FieldElement::from_ratio(1, 2)), LadderKind::Psi, 4).map_err(|e| e.to_string())?;
    for rep in [&phi, &psi] {
        if let Some(c) = rep.checks.iter().find(|c| !c.holds) {
            return Err(format!("{} ladder: n={} {}", rep.kind, c.n, c.relation));
        }
    }
    Ok(format!("{} phi checks (n <= 5) and {} psi checks (n <= 4) hold exactly", phi.checks.len(), psi.checks.len()))
}

fn evolution() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = if rng.gen::<bool>() { BellSign::Plus } else { BellSign::Minus };
        let pt = EvolutionPoint::new(rng.gen_range(-6.3..6.3), rng.gen_range(-6.3..6.3)).map_err(|e| e.to_string())?;
        let k = rng.gen_range(0..4);
        let (a, b) = (evolve(s, pt, k), closed_form(s, pt, k));
        let dev = a.iter().zip(&b).map(|(x, y)| (x.re - y.re).abs().max((x.im - y.im).abs())).fold(0.0, f64::max);
        let (m, e) = (evolution_matrix(s, pt), exp_series(s, pt));
        let mdev = m.as_flattened().iter().zip(e.as_flattened()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        worst = worst.max(dev).max(mdev);
        ensure(dev < 1e-12 && mdev < 1e-12, || format!("{s} theta={} phi={} ket={k}: {dev:e} / {mdev:e}", pt.theta(), pt.phi()))?;
    }
    let z = evolve(BellSign::Plus, EvolutionPoint::new(0.0, 0.0).map_err(|e| e.to_string())?, 0);
    ensure((z[0].re - FRAC_1_SQRT_2).abs() < 1e-12 && (z[3].re + FRAC_1_SQRT_2).abs() < 1e-12, || "theta = 0 image of |00>".into())?;
    Ok(format!("100 random points agree with the closed forms and the series exponential (max deviation {worst:.1e})"))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Check); 12] = [
        (1, "braided Yang-Baxter", braid_ybe),
        (2, "Bell-matrix identities", bell_identities),
        (3, "generation table", generation),
        (4, "FRT derivation", frt_sets),
        (5, "annihilation identities", annihilation),
        (6, "spectral Yang-Baxter", spectral),
        (7, "two-copy algebra", b_algebra),
        (8, "representations", representations),
        (9, "composition series", composition),
        (10, "decomposition", decomposition),
        (11, "ladders", ladders),
        (12, "evolution", evolution),
    ];
    // The printed B- row is the computed one with psi and phi interchanged.
    let known_failures = [3u8];
    let mut unexpected = Vec::new();
    for (n, name, f) in criteria {
        let start = Instant::now();
        let res = f();
        let t = start.elapsed().as_secs_f64();
        match &res {
            Ok(msg) => println!("criterion {n:>2} PASS  {name}: {msg} [{t:.2}s]"),
            Err(msg) => println!("criterion {n:>2} FAIL  {name}: {msg} [{t:.2}s]"),
        }
        if res.is_ok() == known_failures.contains(&n) {
            unexpected.push(n);
        }
    }
    let passed = 12 - known_failures.len();
    if unexpected.is_empty() {
        println!("acceptance: {passed}/12 PASS; criterion 3 FAIL is the known printed-table mismatch");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
