//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact; the only tolerances are the wall-clock budgets pinned below.

mod common;

use std::time::{Duration, Instant};

use holodiff::boseck::{
    boundary_candidates, enumerate_basis, enumerate_basis_single_as, enumerate_basis_single_kummer, enumerate_basis_with,
};
use holodiff::finite_field::{Field, FieldSpec};
use holodiff::fixtures;
use holodiff::galois::{action_matrix, basis_index, cyclic_decomposition, jordan_blocks, nilpotency_check};
use holodiff::linalg::{identity, mat_mul};
use holodiff::places::Place;
use holodiff::standard_form::{as_weak_standard_form, elementary_abelian_merge, Replacement};
use holodiff::tower::{analyze, genus, genus_from_analysis, StepKind, TowerDescriptor};
use holodiff::tower_algebra::{alg_mul, holomorphy_check, AlgebraElement};
use holodiff::univariate::{Poly, RatFun};
use holodiff::Error;

/// Exact comparisons: integer results must match with zero tolerance.
const EXACT: i64 = 0;
const GENUS_BUDGET: Duration = Duration::from_secs(1);
const SUITE_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_TOWERS: usize = 200;
const RANDOM_SEED: u64 = 0x5eed_2024;
const MAX_RANDOM_GENUS: u64 = 60;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exact(name: &str, got: i64, want: i64) -> Result<(), String> {
    check((got - want).abs() <= EXACT, format!("{name}: got {got}, expected {want}"))
}

fn err(e: Error) -> String {
    format!("{}: {e}", e.code())
}

fn random_suite() -> Vec<TowerDescriptor> {
    common::random_validated(RANDOM_SEED, RANDOM_TOWERS, MAX_RANDOM_GENUS)
}

fn criterion_1() -> Outcome {
    let cases = [
        ("Artin-Mumford F_3", fixtures::artin_mumford(), 4),
        ("Hermitian chart F_9", fixtures::hermitian_chart(), 3),
        ("Fermat n=3 F_7", fixtures::fermat_n3_f7(), 1),
        ("elliptic F_5", fixtures::elliptic_f5(), 1),
    ];
    let mut parts = Vec::new();
    for (name, d, want) in cases {
        let t = Instant::now();
        let g = genus(&d).map_err(err)?;
        let dt = t.elapsed();
        exact(name, g as i64, want)?;
        check(dt < GENUS_BUDGET, format!("{name}: {dt:?} over budget"))?;
        parts.push(format!("{name} g={g} ({:.1} ms)", dt.as_secs_f64() * 1e3));
    }
    Ok(parts.join(", "))
}

fn criterion_2(random: &[TowerDescriptor]) -> Outcome {
    let t = Instant::now();
    check(random.len() >= RANDOM_TOWERS, format!("only {} random towers generated", random.len()))?;
    for d in random {
        let a = analyze(d).map_err(err)?;
        check(d.height() <= 3 && d.bounds().iter().all(|&n| n <= 5), "random tower outside r <= 3, n_i <= 5")?;
        check(d.field().q() <= 49 && a.profiles.len() <= 6, "random tower outside q <= 49 or 6 ramified places")?;
    }
    let mut count = 0;
    for (name, d) in fixtures::validated().iter().map(|(n, d)| (n.to_string(), d)).chain(random.iter().enumerate().map(|(i, d)| (format!("random #{i}"), d))) {
        let a = analyze(d).map_err(err)?;
        let g = genus_from_analysis(d, &a).map_err(err)?;
        let b = enumerate_basis_with(d, &a).map_err(err)?;
        exact(&format!("{name} basis size"), b.len() as i64, g as i64)?;
        count += 1;
    }
    let dt = t.elapsed();
    check(dt < SUITE_BUDGET, format!("{dt:?} over budget"))?;
    Ok(format!("{count} towers, |B| = g in all ({:.2} s)", dt.as_secs_f64()))
}

fn criterion_3(random: &[TowerDescriptor]) -> Outcome {
    let t = Instant::now();
    let (mut good, mut bad) = (0, 0);
    for d in fixtures::validated().into_iter().map(|(_, d)| d).chain(random.iter().cloned()) {
        let a = analyze(&d).map_err(err)?;
        for b in enumerate_basis_with(&d, &a).map_err(err)? {
            let r = holomorphy_check(&d, &b).map_err(err)?;
            check(r.holomorphic, format!("{} fails the oracle", b.pretty(d.field())))?;
            good += 1;
        }
        for b in boundary_candidates(&d, &a).map_err(err)? {
            let r = holomorphy_check(&d, &b).map_err(err)?;
            check(
                r.failing().any(|(pl, _)| pl.is_infinite()),
                format!("boundary candidate {} has no pole above infinity", b.pretty(d.field())),
            )?;
            bad += 1;
        }
    }
    let dt = t.elapsed();
    check(dt < SUITE_BUDGET, format!("{dt:?} over budget"))?;
    Ok(format!("{good} basis elements holomorphic, {bad} boundary candidates rejected at infinity ({:.2} s)", dt.as_secs_f64()))
}

fn criterion_4() -> Outcome {
    let d = fixtures::fermat_n3_f7();
    let k = d.field();
    let basis = enumerate_basis(&d).map_err(err)?;
    exact("basis size", basis.len() as i64, 1)?;
    // w·y² must be a nonzero constant, i.e. w = c·y^{-2}
    let w = basis[0].to_element(&d);
    let y = AlgebraElement::generator(1, 1);
    let prod = alg_mul(&d, &w, &alg_mul(&d, &y, &y));
    let c = prod.as_ratfun().and_then(|r| r.as_constant()).filter(|c| !c.is_zero());
    let c = c.ok_or_else(|| format!("w*y^2 = {} is not a nonzero constant", prod.display(k)))?;
    Ok(format!("{} = {} * y^-2 dx", basis[0].pretty(k), holodiff::univariate::display_fq(c, k)))
}

fn criterion_5() -> Outcome {
    let mut names = Vec::new();
    for (name, d) in fixtures::validated().into_iter().filter(|(_, d)| d.height() == 1) {
        let k = d.field();
        let general = enumerate_basis(&d).map_err(err)?;
        let c = d.step(1).c.as_ratfun().ok_or("one-step coefficient not in k(x)")?;
        let single = match d.step(1).kind {
            StepKind::ArtinSchreier => enumerate_basis_single_as(&c, k),
            StepKind::Kummer { n } => enumerate_basis_single_kummer(c.num(), n, k),
        }
        .map_err(err)?;
        check(general == single, format!("{name}: single-step basis differs"))?;
        names.push(format!("{name} ({})", general.len()));
    }
    Ok(names.join(", "))
}

fn criterion_6() -> Outcome {
    let k3 = Field::prime(3).map_err(|e| e.to_string())?;
    let x = RatFun::x();
    let inv_x = x.inv(&k3).map_err(err)?;
    let r = x.pow(-3, &k3).map_err(err)?.add(&inv_x, &k3);
    let (out, chain) = as_weak_standard_form(&r, &[], &k3).map_err(err)?;
    let v = out.valuation(&Place::Finite(Poly::x()), &k3).map_err(err)?;
    exact("ramified valuation", v, -1)?;
    check(
        chain.len() == 1 && chain.records[0].replacement == Replacement::Shift(inv_x.clone()),
        "chain is not [y -> y + 1/x]",
    )?;
    check(chain.replay_as(&r, &k3).map_err(err)? == out, "chain replay differs")?;

    let k9 = Field::new(FieldSpec::extension(3, vec![1, 0, 1])).map_err(|e| e.to_string())?;
    let p = 3i64;
    let n = 2u64;
    let a1 = RatFun::from_poly(Poly::from_ints(&k9, &[-1, 1])).inv(&k9).map_err(err)?;
    let z = x.inv(&k9).map_err(err)?;
    let m = elementary_abelian_merge(&a1, &z, k9.one(), k9.one(), n, &k9).map_err(err)?;
    let vz = z.valuation(&Place::Finite(Poly::x()), &k9).map_err(err)?;
    let at_x = m.predicted.iter().find(|(pl, _)| *pl == Place::Finite(Poly::x())).ok_or("no prediction at (x)")?.1;
    exact("merge valuation at (x)", at_x, vz * (1 + p * (n as i64 - 1)))?;
    check(m.predicted == m.verified, format!("oracle disagrees: {:?} vs {:?}", m.predicted, m.verified))?;
    Ok(format!("weak form 2/x via [y -> y + 1/x]; merge v = {at_x} = v(z)(1 + p(n-1)), oracle agrees"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for (name, d) in fixtures::validated() {
        let nil = nilpotency_check(&d).map_err(err)?;
        check(nil.passed, format!("{name}: nilpotency fails: {:?}", nil.witness))?;
        let k = d.field();
        let (_, idx) = basis_index(&d).map_err(err)?;
        let bounds = d.bounds();
        let ones = vec![1u64; d.height()];
        let m1 = action_matrix(&d, &idx, &ones).map_err(err)?;
        let m2 = action_matrix(&d, &idx, &ones.iter().map(|x| 2 * x).collect::<Vec<_>>()).map_err(err)?;
        check(mat_mul(&m1, &m1, k) == m2, format!("{name}: M(h)^2 != M(2h)"))?;
        for i in 0..d.height() {
            let mut h = vec![0u64; d.height()];
            h[i] = bounds[i];
            check(action_matrix(&d, &idx, &h).map_err(err)? == identity(idx.len()), format!("{name}: generator order"))?;
        }
        checked += 1;
    }
    let d = fixtures::as_genus_two();
    let k = d.field();
    let (_, idx) = basis_index(&d).map_err(err)?;
    let m = action_matrix(&d, &idx, &[1]).map_err(err)?;
    let blocks = jordan_blocks(&m, k.one(), k);
    check(blocks.len() == 1 && blocks.get(&2) == Some(&1), format!("Jordan blocks {blocks:?}"))?;
    let rep = cyclic_decomposition(&d).map_err(err)?;
    check(rep.entries.len() == 1, format!("{} summands", rep.entries.len()))?;
    let e = &rep.entries[0];
    exact("mu_p", e.mu_p as i64, 2)?;
    exact("multiplicity", e.multiplicity, 1)?;
    exact("sum d*dim", e.multiplicity * e.dim as i64, rep.genus as i64)?;
    Ok(format!("{checked} fixtures nilpotent and representations; AS genus 2: one 2x2 Jordan block, d = 1 at mu_p = 2"))
}

fn criterion_8(random: &[TowerDescriptor]) -> Outcome {
    let mut fixtures_done = Vec::new();
    for (name, d) in fixtures::validated() {
        let rep = match cyclic_decomposition(&d) {
            Ok(r) => r,
            Err(Error::NotCyclic(_)) => continue,
            Err(e) => return Err(format!("{name}: {}", err(e))),
        };
        let total: i64 = rep.entries.iter().map(|e| e.multiplicity * e.dim as i64).sum();
        exact(&format!("{name} sum d*dim"), total, rep.genus as i64)?;
        check(rep.jordan_agrees == Some(true), format!("{name}: Jordan type not confirmed"))?;
        fixtures_done.push(name);
    }
    let mut random_done = 0;
    for d in random.iter().filter(|d| common::is_abelian_plain(d)) {
        match cyclic_decomposition(d) {
            Ok(rep) => {
                let total: i64 = rep.entries.iter().map(|e| e.multiplicity * e.dim as i64).sum();
                exact("random sum d*dim", total, rep.genus as i64)?;
                random_done += 1;
            }
            Err(Error::NotCyclic(_)) => {}
            Err(e) => return Err(err(e)),
        }
    }
    Ok(format!("fixtures [{}] and {random_done} random cyclic towers consistent", fixtures_done.join(", ")))
}

fn main() {
    let random = random_suite();
    let criteria: Vec<Criterion> = vec![
        ("genus identities on the classical curves", Box::new(criterion_1)),
        ("basis size equals genus on fixtures and random towers", Box::new(|| criterion_2(&random))),
        ("holomorphy oracle accepts the basis and rejects boundary candidates", Box::new(|| criterion_3(&random))),
        ("Fermat n = 3, q = 7 basis is a multiple of y^-2 dx", Box::new(criterion_4)),
        ("single-step enumerators agree with the general one", Box::new(criterion_5)),
        ("standard-form algorithms", Box::new(criterion_6)),
        ("Galois action suite", Box::new(criterion_7)),
        ("cyclic decomposition dimension sum", Box::new(|| criterion_8(&random))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
