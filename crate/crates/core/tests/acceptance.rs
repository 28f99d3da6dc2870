use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tforge::algebra::{difference_list, AbelianGroup, DiffMode};
use tforge::codes::{
    code_to_gbtp, ec_table, ec_table_exhaustive, gbtp_to_code, is_equitable, min_distance, optimality_cert_2q3,
    plotkin_check, stats, Code,
};
use tforge::constructions::{build_td, drtd_from_td, fill_hole, frame_fill, inflate, tripling, FinalFill};
use tforge::designs::fixtures::{load, FIG1, FIG2, FIG3, FIG7, FIG8};
use tforge::designs::*;
use tforge::search::{max_eswc, search_gbtp, search_starters, GbtpParams, StarterParams, DEFAULT_BUDGET};
use tforge::starters::{build_fq_gbtd_starter, build_frgbtd_6_8, build_igbtp_33, develop, develop_gbtd, frgbtd_6_8_blocks, verify_starter};
use tforge::Error;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passes(what: &str, rep: tforge::Result<VerifyReport>) -> Result<(), String> {
    match rep {
        Ok(r) if r.pass => Ok(()),
        Ok(r) => Err(format!("{what}: {}", r.failed().join(", "))),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn fixtures() -> Check {
    passes("fig1", Ok(verify_gbtp(&load(FIG1))))?;
    let f2 = load(FIG2);
    passes("fig2 rbibd", verify_rbibd(&f2))?;
    passes("fig2 coloring", verify_coloring(&f2, 3, true))?;
    let (row, _) = pi_witnesses(&f2, 3).ok_or("fig2 has no Π row")?;
    for (x, color) in [("1_0", 0), ("inf0", 1), ("inf0", 2)] {
        let hit = (0..f2.ncols())
            .filter_map(|c| f2.cell(0, c))
            .any(|cell| cell.color == Some(color) && cell.block.iter().any(|p| p.to_string() == x));
        ensure(!hit, || format!("{x} is not a witness for color {color} in row 1"))?;
    }
    let f3 = load(FIG3);
    passes("fig3 gbtd", verify_gbtd(&f3))?;
    passes("fig3 special", Ok(verify_special(&f3)))?;
    passes("fig3 coloring", verify_coloring(&f3, 2, false))?;
    let (r, c) = f3.special.ok_or("fig3 has no special cell")?;
    let cell = (f3.rows[r].to_string(), f3.cols[c].to_string());
    ensure(cell == ("1".into(), "5".into()), || format!("fig3 special cell {cell:?}"))?;
    passes("fig7", verify_igbtp(&load(FIG7)))?;
    passes("fig8", verify_frgbtd(&load(FIG8)))?;
    Ok(format!("5 fixtures clean; fig2 Π in row {}, 1_0 and inf0 witness row 1", f2.rows[row]))
}

fn example_code() -> Check {
    let g = load(FIG1);
    let c = gbtp_to_code(&g).map_err(e)?;
    let want = [
        ("1", [2, 1, 3, 2]),
        ("2", [2, 2, 1, 3]),
        ("3", [2, 3, 2, 1]),
        ("4", [3, 1, 2, 3]),
        ("5", [3, 2, 3, 1]),
        ("6", [3, 3, 1, 2]),
    ];
    let pts = c.points.as_ref().ok_or("code lost its points")?;
    ensure(c.size() == 6, || format!("{} words", c.size()))?;
    for (x, w) in want {
        let i = pts.iter().position(|p| p.to_string() == x).ok_or(format!("point {x} missing"))?;
        let got: Vec<String> = c.show_word(i);
        let exp: Vec<String> = w.iter().map(|s| s.to_string()).collect();
        ensure(got == exp, || format!("c({x}) = {got:?}, want {exp:?}"))?;
    }
    let back = code_to_gbtp(&c, &g.k_set, g.lambda).map_err(e)?;
    ensure(back.rows == g.rows && back.cols == g.cols && back.points == g.points, || "labels differ".into())?;
    for r in 0..g.nrows() {
        for col in 0..g.ncols() {
            let a = g.block(r, col).map(|b| {
                let mut b = b.clone();
                b.sort();
                b
            });
            let b = back.block(r, col).cloned();
            ensure(a == b, || format!("cell ({r},{col}): {a:?} vs {b:?}"))?;
        }
    }
    let s = stats(&c).map_err(e)?;
    Ok(format!("six words match, round trip exact, ESWC({},{})_{}", s.n, s.d, s.q))
}

fn eswc_values() -> Check {
    let mut out = Vec::new();
    for (n, d, q, want) in [(3, 2, 2, 3), (5, 3, 2, 4), (7, 4, 2, 7), (3, 2, 3, 6), (4, 3, 3, 6), (5, 4, 4, 12), (7, 6, 5, 14)] {
        let r = max_eswc(n, d, q, DEFAULT_BUDGET * 4).map_err(e)?;
        ensure(r.exact && r.max_m == want, || format!("A_{q}({n},{d}) = {} exact={}", r.max_m, r.exact))?;
        ensure(r.witness.size() == want && is_equitable(&r.witness), || format!("A_{q}({n},{d}) witness"))?;
        ensure(min_distance(&r.witness).map_err(e)? >= d, || format!("A_{q}({n},{d}) witness distance"))?;
        out.push(format!("A_{q}({n},{d})={want}"));
    }
    let r = max_eswc(9, 8, 6, DEFAULT_BUDGET).map_err(e)?;
    ensure(r.max_m >= 14 && is_equitable(&r.witness), || format!("A_6(9,8) witness {}", r.max_m))?;
    ensure(min_distance(&r.witness).map_err(e)? >= 8, || "A_6(9,8) witness distance".into())?;
    let p = plotkin_check(9, 8, 6, 15);
    ensure(!p.holds, || "Plotkin admits 15 words at (9,8)_6".into())?;
    out.push(format!("A_6(9,8)={} (15 refuted: {} > {})", r.max_m, p.lhs, p.rhs));
    Ok(out.join(" "))
}

fn prime_powers() -> Check {
    for q in [7u64, 13, 19, 25, 31] {
        let (st, _) = build_fq_gbtd_starter(q).map_err(e)?;
        let g = develop_gbtd(&st).map_err(e)?;
        passes(&format!("GBTD(3,{q})"), verify_gbtd(&g))?;
        let s = stats(&gbtp_to_code(&g).map_err(e)?).map_err(e)?;
        let want = ((3 * q as usize - 1) / 2, (3 * q as usize - 3) / 2, 3 * q as usize);
        ensure((s.n, s.d, s.m) == want, || format!("q={q}: (n,d,M) = {:?}", (s.n, s.d, s.m)))?;
        ensure(s.equitable && s.plotkin.equality, || format!("q={q}: equitable {} equality {}", s.equitable, s.plotkin.equality))?;
        ensure(s.capability == q as usize - 1, || format!("q={q}: c = {}", s.capability))?;
    }
    Ok("q = 7 13 19 25 31 verified, Plotkin equality, c = q-1".into())
}

fn code_line(g: &DesignGrid, want: (usize, usize, u32, usize)) -> Check {
    let s = stats(&gbtp_to_code(g).map_err(e)?).map_err(e)?;
    ensure((s.n, s.d, s.q, s.m) == want, || format!("code (n,d,q,M) = {:?}", (s.n, s.d, s.q, s.m)))?;
    ensure(s.plotkin.equality, || "no Plotkin equality".into())?;
    Ok(format!("ESWC({},{})_{} of size {} at Plotkin equality", s.n, s.d, s.q, s.m))
}

fn tripling_chain() -> Check {
    let rb = promote_coloring(&load(FIG3)).map_err(e)?;
    passes("promoted", verify_coloring(&rb, 3, true))?;
    let drtd = drtd_from_td(&build_td(5, 27).map_err(e)?).map_err(e)?;
    let g = tripling(&rb, &drtd, true).map_err(e)?;
    passes("GBTD(3,27)", verify_gbtd(&g))?;
    passes("special", Ok(verify_special(&g)))?;
    code_line(&g, (40, 39, 27, 81))
}

fn frame_chain() -> Check {
    let drtd = drtd_from_td(&build_td(5, 4).map_err(e)?).map_err(e)?;
    passes("DRTD(3,4)", verify_drtd(&drtd))?;
    let big = inflate(&load(FIG8), &drtd).map_err(e)?;
    passes("FrGBTD(3,24^6)", verify_frgbtd(&big))?;
    let g = frame_fill(&big, &vec![load(FIG3); 6], Some(FinalFill::Block)).map_err(e)?;
    passes("GBTD(3,49)", verify_gbtd(&g))?;
    passes("special", Ok(verify_special(&g)))?;
    code_line(&g, (73, 72, 49, 147))
}

fn explicit() -> Check {
    let fr = build_frgbtd_6_8();
    passes("FrGBTD(3,6^8)", verify_frgbtd(&fr))?;
    let mut diffs: Vec<u32> = difference_list(&frgbtd_6_8_blocks(), &AbelianGroup::cyclic(48), DiffMode::Plain)
        .map_err(e)?
        .into_iter()
        .map(|x| x[0])
        .collect();
    diffs.sort();
    let want: Vec<u32> = (0..48).filter(|x| x % 8 != 0).collect();
    ensure(diffs == want, || format!("difference list {diffs:?}"))?;
    let ig = build_igbtp_33();
    passes("IGBTP(33)", verify_igbtp(&ig))?;
    let o = search_gbtp(&GbtpParams::gbtp(&[2, 3], &[3], 9, 4, 5, 1), DEFAULT_BUDGET).map_err(e)?;
    let nodes = o.nodes;
    let inner = o.into_result("GBTP(9,4x5)").map_err(e)?;
    passes("GBTP(9,4x5)", Ok(verify_gbtp(&inner)))?;
    let g = fill_hole(&ig, &inner, None).map_err(e)?;
    passes("GBTP(33,16x29)", Ok(verify_gbtp(&g)))?;
    ensure((g.points.len(), g.nrows(), g.ncols()) == (33, 16, 29), || "filled shape".into())?;
    let s = stats(&gbtp_to_code(&g).map_err(e)?).map_err(e)?;
    ensure((s.n, s.d, s.q, s.m) == (29, 28, 16, 33), || format!("code {:?}", (s.n, s.d, s.q, s.m)))?;
    let p = plotkin_check(29, 28, 16, 34);
    ensure(!p.holds && (p.lhs, p.rhs) == (15708, 15689), || format!("Plotkin at 34: {} vs {}", p.lhs, p.rhs))?;
    Ok(format!("Z_48 differences exact; inner GBTP in {nodes} nodes; ESWC(29,28)_16 size 33; 34 refuted {} > {}", p.lhs, p.rhs))
}

fn polynomials() -> Check {
    for m in 7..=100u64 {
        let c = optimality_cert_2q3(m).map_err(e)?;
        let x = m as i128;
        let lhs = 4 * x * x * x - 2 * x * x - 10 * x - 4;
        let rhs = 4 * x * x * x - 2 * x * x - 12 * x + 9;
        ensure(lhs > rhs && (c.poly_lhs, c.poly_rhs) == (lhs, rhs), || format!("m={m}: polynomials"))?;
        let p = plotkin_check(2 * m - 3, 2 * m - 4, m, 2 * m + 2);
        ensure(!p.holds && p.lhs as i128 == lhs && p.rhs as i128 == rhs, || format!("m={m}: plotkin {p:?}"))?;
    }
    for m in 4..=6 {
        ensure(optimality_cert_2q3(m) == Err(Error::MTooSmall(m)), || format!("m={m} claimed"))?;
    }
    Ok("m = 7..100 violated, lhs > rhs; m = 4,5,6 rejected".into())
}

fn nonexistence() -> Check {
    let mut out = Vec::new();
    for m in [3, 5] {
        let o = search_gbtp(&GbtpParams::gbtd(3, m, 1), DEFAULT_BUDGET).map_err(e)?;
        ensure(o.value.is_none() && o.exhausted, || format!("GBTD(3,{m}): found={} exhausted={}", o.value.is_some(), o.exhausted))?;
        let nodes = o.nodes;
        ensure(matches!(o.into_result("gbtd"), Err(Error::NotFound(_))), || "not NotFound".into())?;
        out.push(format!("GBTD(3,{m}) exhausted in {nodes} nodes"));
    }
    Ok(out.join("; "))
}

fn adjunction() -> Result<usize, String> {
    let runs: [(&str, u32, u32, usize); 7] = [
        ("gbtd", 7, 0, 6),
        ("frgbtd", 5, 0, 6),
        ("igbtp_z4", 5, 9, 3),
        ("igbtp_z4", 7, 9, 3),
        ("igbtp_z2", 11, 5, 2),
        ("igbtp_z2", 11, 9, 2),
        ("gbtd", 7, 0, 1),
    ];
    let mut total = 0;
    for (i, (kind, m, w, limit)) in runs.into_iter().enumerate() {
        let special = i == runs.len() - 1;
        let o = search_starters(kind, &StarterParams { m, w, special }, DEFAULT_BUDGET, limit).map_err(e)?;
        let found = o.value.unwrap_or_default();
        ensure(!found.is_empty(), || format!("no {kind} starter for m={m}"))?;
        for s in &found {
            ensure(verify_starter(s).pass, || format!("{kind} starter fails its verifier"))?;
            let g = develop(s).map_err(e)?;
            let rep = match kind {
                "gbtd" => verify_gbtd(&g),
                "frgbtd" => verify_frgbtd(&g),
                _ => verify_igbtp(&g),
            };
            passes(&format!("developed {kind} m={m}"), rep)?;
            if special {
                passes("special", Ok(verify_special(&g)))?;
            }
        }
        total += found.len();
    }
    Ok(total)
}

fn random_code(rng: &mut ChaCha8Rng) -> Code {
    let q = rng.gen_range(2..=8u32);
    let n = rng.gen_range(1..=12usize);
    let size = rng.gen_range(1..=12usize);
    let mut words: Vec<Vec<u32>> = Vec::new();
    for _ in 0..size * 4 {
        let w: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if !words.contains(&w) {
            words.push(w);
        }
        if words.len() == size {
            break;
        }
    }
    Code::new(q, n, words).expect("distinct words in range")
}

fn mutations(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let g = load(FIG3);
    passes("fig3", verify_gbtd(&g))?;
    let cells: Vec<(usize, usize, usize)> = g.occupied().map(|(r, c, cell)| (r, c, cell.block.len())).collect();
    for t in 0..100 {
        let (r, c, len) = cells[rng.gen_range(0..cells.len())];
        let at = rng.gen_range(0..len);
        let old = g.block(r, c).unwrap()[at].clone();
        let new = loop {
            let p = &g.points[rng.gen_range(0..g.points.len())];
            if *p != old {
                break p.clone();
            }
        };
        let mut m = g.clone();
        m.cell_mut(r, c).unwrap().block[at] = new.clone();
        let caught = match verify_gbtd(&m) {
            Ok(rep) => !rep.pass,
            Err(_) => true,
        };
        ensure(caught, || format!("mutation {t}: {old} -> {new} at ({r},{c}) passes"))?;
    }
    Ok(())
}

fn properties() -> Check {
    let starters = adjunction()?;
    ensure(starters >= 20, || format!("only {starters} starters"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x7f0e);
    for i in 0..100 {
        let c = random_code(&mut rng);
        ensure(ec_table(&c) == ec_table_exhaustive(&c), || format!("E_C differs on random code {i}: {c:?}"))?;
    }
    mutations(&mut rng)?;
    Ok(format!("{starters} starters develop cleanly; 100 E_C tables agree; 100 mutations caught"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let all = [
        Criterion { id: 1, name: "fixture verification", limit: secs(1), run: fixtures },
        Criterion { id: 2, name: "example code and round trip", limit: secs(1), run: example_code },
        Criterion { id: 3, name: "small ESWC maxima", limit: secs(600), run: eswc_values },
        Criterion { id: 4, name: "prime-power pipeline", limit: secs(30), run: prime_powers },
        Criterion { id: 5, name: "tripling chain to 27", limit: secs(60), run: tripling_chain },
        Criterion { id: 6, name: "frame chain to 49", limit: secs(120), run: frame_chain },
        Criterion { id: 7, name: "explicit constructions", limit: secs(120), run: explicit },
        Criterion { id: 8, name: "polynomial certificate", limit: secs(1), run: polynomials },
        Criterion { id: 9, name: "nonexistence by search", limit: secs(600), run: nonexistence },
        Criterion { id: 10, name: "property suites", limit: secs(600), run: properties },
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in all.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let t = Instant::now();
        let res = (c.run)();
        let took = t.elapsed();
        let res = match res {
            Ok(msg) if took > c.limit => Err(format!("{msg}; over the {:?} limit", c.limit)),
            r => r,
        };
        let (tag, msg) = match res {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!("{tag} [{:>2}] {:<28} {:>8.2}s  {msg}", c.id, c.name, took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
