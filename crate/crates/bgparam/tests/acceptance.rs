//! Acceptance criteria 1-8, one pass/fail line each.
//!
//! Oracles here are written against plain permutations, block averages and
//! brute-force enumeration, not against the library's own bookkeeping.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use bgparam::disconnected::weights::{is_dominant, weight_multiplicities};
use bgparam::disconnected::{preset as disconnected_preset, Disconnected};
use bgparam::endoscopy::{
    eci_both_sides, endoscopic_group_from_s, enumerate_embedded, fmt_cyclo, indexing_bijection_check,
    jacquet_geometric_terms, regular_pairing, regular_part, s_from_strs, EndoscopicDatum,
};
use bgparam::io::presets::{group, GROUP_PRESETS};
use bgparam::kottwitz::{enumerate_stratum, newton, BElement};
use bgparam::lattice::{ivec, IVec, LatticeAction, QVec};
use bgparam::packet::{
    build_packet_member, central_character_square, enumerate_fiber, parameter, round_trip_check, Parameter,
};
use bgparam::root_datum::Group;
use bgparam::weyl::chamber_locate;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn e(err: bgparam::error::Error) -> String {
    err.to_string()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn endo(s: &[&str]) -> EndoscopicDatum {
    EndoscopicDatum { s: s_from_strs(s).unwrap(), twist: vec![] }
}

fn criterion_1() -> Outcome {
    let p = parameter("gl2-triv").map_err(e)?;
    let ed = endoscopic_group_from_s(&p.g, &endo(&["0", "0"])).map_err(e)?;
    let mut seen = 0;
    for k in -3..=3 {
        let lam = ivec(&[k + 1, k]);
        ensure!(p.sphi.irr(&lam, 0).map_err(e)?.dim == BigInt::from(2), "ρ = {lam:?} is not 2-dimensional");
        let lab = build_packet_member(&p, &lam, 0).map_err(e)?;
        ensure!(!lab.b.is_basic(&p.g) && lab.levi.is_empty(), "λ = {lam:?}: G_b is not T");
        let fiber = enumerate_fiber(&p, &lab.b).map_err(e)?;
        ensure!(fiber.members.len() == 1, "λ = {lam:?}: fiber has {} members", fiber.members.len());
        let pv = regular_pairing(&p, &lab.b, &fiber.members[0], &ed).map_err(e)?;
        ensure!(fmt_cyclo(&pv.value) == "2", "⟨π,1⟩_reg = {}", fmt_cyclo(&pv.value));
        let r = eci_both_sides(&p, &lab.b, &ed).map_err(e)?;
        ensure!(r.ok(), "ECI fails for λ = {lam:?}");
        for side in [&r.lhs, &r.rhs] {
            ensure!(side.terms.len() == 1 && fmt_cyclo(&side.terms[0].coefficient) == "2", "side is not a single 2·Θ");
        }
        seen += 1;
    }
    Ok(format!("{seen} two-dimensional ρ"))
}

fn criterion_2() -> Outcome {
    let p = parameter("gl4-st2").map_err(e)?;
    let ed = endoscopic_group_from_s(&p.g, &endo(&["0"; 4])).map_err(e)?;
    let mut seen = 0;
    for (a, b) in [(1, 0), (2, 0), (3, 1), (0, -2)] {
        let lam = ivec(&[a, b]);
        let lab = build_packet_member(&p, &lam, 0).map_err(e)?;
        ensure!(lab.levi == vec![0, 2], "λ = {lam:?}: L = {:?}", lab.levi);
        let j = jacquet_geometric_terms(&p, &ed, &lab.levi, 0).map_err(e)?;
        ensure!(j.multiplicity() == 3, "{} geometric-lemma terms", j.multiplicity());
        let reg = regular_part(&j);
        ensure!(reg.terms.len() == 1 && fmt_cyclo(&reg.terms[0].coefficient) == "2", "regular part is not 2·Θ");
        let r = eci_both_sides(&p, &lab.b, &ed).map_err(e)?;
        ensure!(r.discarded.multiplicity() == 1, "{} discarded terms", r.discarded.multiplicity());
        ensure!(r.ok(), "ECI fails for λ = {lam:?}");
        ensure!(r.pairings.iter().all(|(_, v)| fmt_cyclo(&v.value) == "2"), "⟨π,1⟩_reg ≠ 2");
        seen += 1;
    }
    Ok(format!("{seen} non-1-dimensional ρ"))
}

/// Blocks of consecutive positions joined by the simple roots in `levi`.
fn blocks(n: usize, levi: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![0]];
    for i in 1..n {
        if levi.contains(&(i - 1)) {
            out.last_mut().unwrap().push(i);
        } else {
            out.push(vec![i]);
        }
    }
    out
}

/// Newton point of `λ ∈ X*(A_M̂)` for `GL_n`: block averages, sorted decreasingly.
fn gl_newton(p: &Parameter, lam: &[BigInt]) -> QVec {
    let n = p.g.rank();
    let mut nu = vec![BigRational::zero(); n];
    for (i, blk) in blocks(n, p.levi_m()).iter().enumerate() {
        for &j in blk {
            nu[j] = BigRational::new(lam[i].clone(), BigInt::from(blk.len()));
        }
    }
    nu.sort_by(|a, b| b.cmp(a));
    nu
}

fn box_points(f: usize, lo: i64, hi: i64) -> Vec<IVec> {
    let mut out = vec![vec![]];
    for _ in 0..f {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    out.into_iter().map(|v| ivec(&v)).collect()
}

/// All `(λ, E)` with `λ` dominant for `S_φ°` and an `R_φ`-orbit representative in a box.
fn brute_rhos(p: &Parameter, k: i64) -> Vec<(IVec, usize)> {
    let mut out = Vec::new();
    for l in box_points(p.rank(), -k, k) {
        if !is_dominant(&p.sphi.datum.identity_component, &l) || p.sphi.orbit_rep(&l) != l {
            continue;
        }
        let (_, mods) = p.sphi.modules_for(&l).unwrap();
        out.extend((0..mods.len()).map(|i| (l.clone(), i)));
    }
    out
}

fn fiber_set(p: &Parameter, b: &BElement) -> Result<BTreeSet<(IVec, usize)>, String> {
    Ok(enumerate_fiber(p, b).map_err(e)?.members.into_iter().map(|m| (m.lambda, m.e_index)).collect())
}

fn criterion_3() -> Outcome {
    let height = 4;
    let suite = ["gl2-triv", "gl3-triv", "gl4-triv", "gl2-st", "gl3-st", "gl3-st2", "gl4-st2", "sl2", "gl2xgl2-swap"];
    let mut members = 0;
    let mut spent = Duration::ZERO;
    for name in suite {
        let p = parameter(name).map_err(e)?;
        let t = Instant::now();
        let rt = round_trip_check(&p, height).map_err(e)?;
        spent += t.elapsed();
        ensure!(rt.ok(), "{name}: {:?}", rt.discrepancies);
        members += rt.members;
        let rhos: Vec<(IVec, usize)> = brute_rhos(&p, height).into_iter().filter(|(l, _)| l.iter().all(|x| !x.is_negative())).collect();
        ensure!(rhos.len() == rt.members, "{name}: {} ρ in the box, oracle {}", rt.members, rhos.len());

        let mut by_b: BTreeMap<BElement, BTreeSet<(IVec, usize)>> = BTreeMap::new();
        for (l, i) in &rhos {
            let b = build_packet_member(&p, l, *i).map_err(e)?.b;
            by_b.entry(b).or_default().insert((l.clone(), *i));
        }
        if name.starts_with("gl") && !name.starts_with("gl2x") {
            // Newton points by block averages; fibers are all ρ with the same sorted ν.
            let n = p.g.rank();
            let bl = blocks(n, p.levi_m());
            for (i, _) in bl.iter().enumerate() {
                let mut unit = vec![0i64; bl.len()];
                unit[i] = 1;
                let lift = p.lift(&ivec(&unit));
                for (j, bj) in bl.iter().enumerate() {
                    let s: BigInt = bj.iter().map(|&x| lift[x].clone()).sum();
                    ensure!(s == BigInt::from((i == j) as i64), "{name}: unexpected X*(A_M̂) coordinates");
                }
            }
            let kmax = height * n as i64;
            let all = brute_rhos(&p, kmax);
            for (b, mine) in &by_b {
                let nu = newton(&p.g, b).map_err(e)?;
                let (l0, _) = mine.iter().next().unwrap();
                ensure!(nu == gl_newton(&p, l0), "{name}: ν(b) ≠ sorted block averages for λ = {l0:?}");
                let levi: Vec<usize> = (0..n - 1).filter(|&j| nu[j] == nu[j + 1]).collect();
                ensure!(b.levi == levi, "{name}: L = {:?}, oracle {levi:?}", b.levi);
                let oracle: BTreeSet<(IVec, usize)> = all.iter().filter(|(l, _)| gl_newton(&p, l) == nu).cloned().collect();
                ensure!(fiber_set(&p, b)? == oracle, "{name}: fiber over {b:?} differs from oracle");
                ensure!(mine.is_subset(&oracle), "{name}: ρ missing from its oracle fiber");
            }
        }
        if p.rank() <= 2 {
            // Brute force: every ρ in a large box, grouped by b.
            let mut all_by_b: BTreeMap<BElement, BTreeSet<(IVec, usize)>> = BTreeMap::new();
            for (l, i) in brute_rhos(&p, 4 * height + 4) {
                let b = build_packet_member(&p, &l, i).map_err(e)?.b;
                all_by_b.entry(b).or_default().insert((l, i));
            }
            for (b, mine) in &by_b {
                let got = fiber_set(&p, b)?;
                ensure!(Some(&got) == all_by_b.get(b), "{name}: fiber over {b:?} differs from brute force");
                ensure!(mine.is_subset(&got), "{name}: ρ missing from its fiber");
            }
        }
    }
    ensure!(spent < Duration::from_secs(10), "round trips took {spent:.2?}");
    Ok(format!("{} presets, {members} ρ at height {height}, round trips {spent:.2?}", suite.len()))
}

fn gamma_fixed_random(g: &Group, rng: &mut StdRng) -> QVec {
    let basis = g.fixed_cochar_basis();
    let mut x = vec![BigRational::zero(); g.rank()];
    for v in &basis {
        let c = q(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += &c * BigRational::from_integer(vi.clone());
        }
    }
    x
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut walls = 0;
    for name in GROUP_PRESETS {
        let g = group(name).map_err(e)?;
        let parabolics = g.standard_parabolics();
        for _ in 0..1000 {
            let x = gamma_fixed_random(&g, &mut rng);
            let cw = chamber_locate(&g, &x).map_err(e)?;
            ensure!(g.act(cw.w, &x) == cw.image, "{name}: witness does not move x to its image");
            let pairings: Vec<BigRational> = (0..g.nsimple()).map(|j| g.simple_pairing(j, &cw.image)).collect();
            let hits: Vec<&Vec<usize>> = parabolics
                .iter()
                .filter(|qq| (0..g.nsimple()).all(|j| if qq.contains(&j) { pairings[j].is_zero() } else { pairings[j].is_positive() }))
                .collect();
            ensure!(hits.len() == 1 && *hits[0] == cw.q, "{name}: {x:?} lies in {} strata", hits.len());
            let stab: BTreeSet<usize> = g.rel.iter().copied().filter(|&w| g.act(w, &cw.image) == cw.image).collect();
            let wl: BTreeSet<usize> = g.levi_rel_weyl(&cw.q).into_iter().collect();
            ensure!(stab == wl, "{name}: stabilizer of {:?} is not W^rel_L", cw.image);
            walls += (!cw.q.is_empty()) as usize;
        }
    }
    Ok(format!("{} presets × 1000 points, {walls} on walls", GROUP_PRESETS.len()))
}

/// Averaging over `W ⋊ Γ` kills coroots and `(γ - 1)`, leaving `α_G`.
fn alpha_g_oracle(g: &Group, lift: &[BigInt]) -> QVec {
    let n = g.rank();
    let gamma = LatticeAction::new(n, g.galois.cochar_generators()).unwrap().closure(10_000).unwrap();
    let mut acc = vec![BigRational::zero(); n];
    let mut count = 0i64;
    for gm in &gamma {
        let y = gm.mul_vec(lift);
        for w in 0..g.weyl.order() {
            for (a, c) in acc.iter_mut().zip(g.weyl.get(w).cochr.mul_vec(&y)) {
                *a += BigRational::from_integer(c);
            }
            count += 1;
        }
    }
    acc.into_iter().map(|a| a / BigRational::from_integer(count.into())).collect()
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for name in GROUP_PRESETS {
        let g = group(name).map_err(e)?;
        let pi1 = g.pi1().map_err(e)?;
        for b in enumerate_stratum(&g, &g.full_levi(), 3).map_err(e)? {
            let nu = newton(&g, &b).map_err(e)?;
            let oracle = alpha_g_oracle(&g, &pi1.pi1.lift(&b.kappa));
            ensure!(nu == oracle, "{name}: ν({:?}) = {nu:?}, oracle {oracle:?}", b.kappa);
            n += 1;
        }
    }
    Ok(format!("{n} basic elements"))
}

/// `Π_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`.
fn weyl_dimension_oracle(g: &Group, lam: &[BigInt]) -> BigRational {
    let n = g.rank();
    let pos = g.positive_roots();
    let mut rho = vec![BigRational::zero(); n];
    for &r in &pos {
        for (x, c) in rho.iter_mut().zip(&g.datum.roots[r]) {
            *x += q(1, 2) * BigRational::from_integer(c.clone());
        }
    }
    let mut num = BigRational::from_integer(1.into());
    for &r in &pos {
        let cr = &g.datum.coroots[r];
        let pr: BigRational = rho.iter().zip(cr).map(|(x, c)| x * BigRational::from_integer(c.clone())).sum();
        let lr: BigRational = lam.iter().zip(cr).map(|(x, c)| BigRational::from_integer(x * c)).sum();
        num *= (lr + &pr) / pr;
    }
    num
}

fn sum_squares(d: &Disconnected, lam: &[BigInt]) -> Result<bool, String> {
    let (stab, mods) = d.modules_for(lam).map_err(e)?;
    Ok(mods.iter().map(|m| m.dim * m.dim).sum::<usize>() == stab.len())
}

fn criterion_6() -> Outcome {
    let mut groups = 0;
    for name in bgparam::packet::PARAMETER_PRESETS {
        let p = parameter(name).map_err(e)?;
        let zero = vec![BigInt::zero(); p.rank()];
        ensure!(sum_squares(&p.sphi, &zero)?, "{name}: Σ dim² ≠ |π₀(S_φ)|");
        groups += 1;
        for rho in p.sphi.classify_irr(3).map_err(e)? {
            ensure!(sum_squares(&p.sphi, &rho.lambda)?, "{name}: Σ dim² ≠ |A^λ|");
            let lab = match build_packet_member(&p, &rho.lambda, rho.module_index) {
                Ok(l) => l,
                Err(bgparam::error::Error::Unsupported(_)) => continue,
                Err(x) => return Err(format!("{name}: {x}")),
            };
            let lg = Disconnected::new(p.s_group_at(lab.w, &lab.levi).map_err(e)?).map_err(e)?;
            ensure!(sum_squares(&lg, &rho.lambda)?, "{name}: Σ dim² ≠ |A^λ_L|");
            groups += 2;
        }
        let rt = round_trip_check(&p, 3).map_err(e)?;
        ensure!(rt.levi_stabilizers_agree, "{name}: A^λ_L ≠ A^λ: {:?}", rt.discrepancies);
    }
    let mut weights = 0;
    for name in GROUP_PRESETS {
        let g = group(name).map_err(e)?;
        if g.rank() > 3 {
            continue;
        }
        for lam in box_points(g.rank(), -4, 4) {
            let x: QVec = lam.iter().map(|v| BigRational::from_integer(v.clone())).collect();
            let pairings: Vec<BigRational> = (0..g.nsimple()).map(|j| g.simple_pairing(j, &x)).collect();
            if pairings.iter().any(|p| p.is_negative()) || pairings.iter().sum::<BigRational>() > q(4, 1) {
                continue;
            }
            let t = weight_multiplicities(&g.datum, &lam).map_err(e)?;
            let oracle = weyl_dimension_oracle(&g, &lam);
            ensure!(BigRational::from_integer(t.dimension()) == oracle, "{name} λ = {lam:?}: {} vs {oracle}", t.dimension());
            weights += 1;
        }
    }
    let o2 = disconnected_preset("o2").map_err(e)?;
    let classes: Vec<(IVec, String, String)> = o2
        .classify_irr(1)
        .map_err(e)?
        .iter()
        .map(|c| (c.lambda.clone(), c.dim.to_string(), c.module.character.iter().map(fmt_cyclo).collect::<Vec<_>>().join(",")))
        .collect();
    let hand = vec![
        (ivec(&[0]), "1".to_string(), "1,1".to_string()),
        (ivec(&[0]), "1".to_string(), "1,-1".to_string()),
        (ivec(&[1]), "2".to_string(), "1".to_string()),
    ];
    ensure!(classes == hand, "O2 classes {classes:?}");
    Ok(format!("{groups} component groups, {weights} highest weights, O2 list"))
}

/// `(σ, τ)` with `σ` a permutation of positions; blocks are sets of positions.
fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn block_of(blocks: &[Vec<usize>], i: usize) -> usize {
    blocks.iter().position(|b| b.contains(&i)).unwrap()
}

fn preserves(blocks: &[Vec<usize>], s: &[usize]) -> bool {
    (0..s.len()).all(|i| block_of(blocks, s[i]) == block_of(blocks, i))
}

fn criterion_7() -> Outcome {
    let s4 = perms(4);
    let mut checked = 0;
    for pname in ["gl4-triv", "gl4-st2"] {
        let p = parameter(pname).map_err(e)?;
        let mb = blocks(4, p.levi_m());
        for (sname, s, hb) in [("1", ["0"; 4], vec![vec![0, 1, 2, 3]]), ("diag(1,1,-1,-1)", ["0", "0", "1/2", "1/2"], vec![vec![0, 1], vec![2, 3]])] {
            let ed = endoscopic_group_from_s(&p.g, &endo(&s)).map_err(e)?;
            ensure!(ed.h.weyl.order() == s4.iter().filter(|x| preserves(&hb, x)).count(), "|W_H| for s = {sname}");
            for levi in p.g.standard_parabolics() {
                if !p.levi_m().iter().all(|j| levi.contains(j)) {
                    continue;
                }
                let lb = blocks(4, &levi);
                let wl = s4.iter().filter(|x| preserves(&lb, x)).count();
                let trans = s4
                    .iter()
                    .filter(|x| mb.iter().all(|b| b.iter().map(|&i| block_of(&lb, x[i])).collect::<BTreeSet<_>>().len() == 1))
                    .count();
                let r = indexing_bijection_check(&p, &levi, &ed).map_err(e)?;
                ensure!(r.ok(), "{pname} s = {sname} L = {levi:?}: not mutually inverse");
                ensure!(r.rhs_size * wl == trans, "{pname} L = {levi:?}: |W_L\\W(M,L)| = {}, brute {}", r.rhs_size, trans / wl);
                ensure!(r.lhs_size == r.rhs_size, "{pname} L = {levi:?}: sizes differ");
                // X^e_L: W_L-orbits times W_H-orbits on S_4.
                let mut seen = BTreeSet::new();
                let mut classes = 0;
                for x in &s4 {
                    if seen.contains(x) {
                        continue;
                    }
                    classes += 1;
                    for a in s4.iter().filter(|a| preserves(&lb, a)) {
                        for h in s4.iter().filter(|h| preserves(&hb, h)) {
                            seen.insert((0..4).map(|i| a[x[h[i]]]).collect::<Vec<_>>());
                        }
                    }
                }
                let emb = enumerate_embedded(&p.g, &levi, &ed).map_err(e)?;
                ensure!(emb.len() == classes, "{pname} s = {sname} L = {levi:?}: {} embedded data, brute {classes}", emb.len());
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (φ, s, L) triples"))
}

fn criterion_8() -> Outcome {
    let suite = ["gl2-triv", "gl3-triv", "gl4-triv", "gl2-st", "gl3-st", "gl3-st2", "gl4-st2", "sl2", "gl2xgl2-swap"];
    let (mut ok, mut skipped) = (0, 0);
    for name in suite {
        let p = parameter(name).map_err(e)?;
        for rho in p.sphi.classify_irr(4).map_err(e)? {
            match central_character_square(&p, &rho.lambda, rho.module_index) {
                Ok(c) => {
                    ensure!(c.equal, "{name} λ = {:?}: ω = {:?}, κ_G = {:?}", rho.lambda, c.omega, c.kappa_g);
                    ok += 1;
                }
                Err(bgparam::error::Error::Unsupported(_)) => skipped += 1,
                Err(x) => return Err(format!("{name}: {x}")),
            }
        }
    }
    Ok(format!("{ok} ρ, {skipped} with non-computable Z^λ-action"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        ("GL2 1+1 example", criterion_1, Some(Duration::from_secs(1))),
        ("GL4 St+St example", criterion_2, Some(Duration::from_secs(1))),
        ("bijectivity suite", criterion_3, None),
        ("chamber/stabilizer", criterion_4, None),
        ("Kottwitz-Newton", criterion_5, None),
        ("representation theory", criterion_6, None),
        ("indexing bijection", criterion_7, None),
        ("central character", criterion_8, None),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let dt = t.elapsed();
        let r = match (r, budget) {
            (Ok(_), Some(b)) if dt > *b => Err(format!("took {dt:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match r {
            Ok(msg) => println!("criterion {} PASS  {name}: {msg} ({dt:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {msg} ({dt:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
