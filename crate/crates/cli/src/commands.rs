use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use eichler_core::cgraph::{
    build_cgraph, check_figure, count_nonsplit_classes, default_place, default_seeds, export_graph,
    figure_graph, standard_places, verify_theorem2, Expectation, Format, VerificationReport,
    FIGURES,
};
use eichler_core::funcfield::parse::{parse_divisor, parse_place, parse_ratfn};
use eichler_core::funcfield::{Divisor, Place};
use eichler_core::lattices::{global_sections, splitting_type, Lattice2, LatticeJson};
use eichler_core::linalg::KMat;
use eichler_core::orders::{f_order, is_split, split_order, EichlerOrder, MaximalOrder, OrderJson};

use crate::config::RunConfig;

/// Whether the answer was affirmative (exit 0) or negative (exit 1).
pub enum Verdict {
    Yes,
    No,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn divisor_pair(s: &str, q: u8) -> Result<(Divisor, Divisor)> {
    let Some((a, b)) = s.split_once(',') else {
        bail!("expected two divisors separated by a comma, got {s:?}");
    };
    Ok((parse_divisor(a.trim(), q)?, parse_divisor(b.trim(), q)?))
}

fn matrix_from_strings(rows: &[Vec<String>], q: u8) -> Result<KMat> {
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        bail!("expected a 2x2 matrix");
    }
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_ratfn(s, q)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KMat::from_rows(rows))
}

pub enum LatticeInput {
    Pair(String),
    LatticeFile(PathBuf),
    TransitionFile(PathBuf),
}

#[derive(Serialize)]
struct SplitTypeOutput {
    a: i64,
    b: i64,
    /// (n, h0(L(-n inf))) around the splitting exponents.
    #[serde(skip_serializing_if = "Option::is_none")]
    h0: Option<Vec<(i64, usize)>>,
}

pub fn split_type(input: &LatticeInput, certificate: bool, cfg: &RunConfig) -> Result<Verdict> {
    let q = cfg.q;
    let l = match input {
        LatticeInput::Pair(s) => {
            let (b, c) = divisor_pair(s, q)?;
            Lattice2::from_divisor_pair(&b, &c)
        }
        LatticeInput::LatticeFile(p) => {
            let j: LatticeJson = serde_json::from_str(&read(p)?)?;
            Lattice2::from_json(&j, q)?
        }
        LatticeInput::TransitionFile(p) => {
            let rows: Vec<Vec<String>> = serde_json::from_str(&read(p)?)?;
            let t = matrix_from_strings(&rows, q)?;
            let inf = t.inverse().context("transition matrix is singular")?;
            Lattice2::new(KMat::identity(q, 2), inf)?
        }
    };
    let st = splitting_type(&l);
    let h0 = certificate.then(|| {
        (st.b - 1..=st.a + 1)
            .map(|n| (n, global_sections(&l, &Divisor::infinity(q, -n)).dim()))
            .collect()
    });
    let out = SplitTypeOutput { a: st.a, b: st.b, h0 };
    if certificate {
        emit(&format!("{}\n", serde_json::to_string_pretty(&out)?), cfg.out.as_deref())?;
    } else {
        emit(&format!("({},{})\n", st.a, st.b), cfg.out.as_deref())?;
    }
    Ok(Verdict::Yes)
}

pub enum OrderInput {
    Pair(String),
    FOrder { r: i64, place: Option<String> },
    Maximal(String),
    File(PathBuf),
}

fn order_from(input: &OrderInput, q: u8) -> Result<EichlerOrder> {
    Ok(match input {
        OrderInput::Pair(s) => {
            let (b, b2) = divisor_pair(s, q)?;
            split_order(&b, &b2)?
        }
        OrderInput::FOrder { r, place } => {
            let p = match place {
                Some(s) => parse_place(s, q)?,
                None => Place::Infinity,
            };
            f_order(*r, &p, q)?
        }
        OrderInput::Maximal(s) => EichlerOrder::maximal(&MaximalOrder::of_divisor(&parse_divisor(s, q)?)),
        OrderInput::File(p) => {
            let j: OrderJson = serde_json::from_str(&read(p)?)?;
            EichlerOrder::from_json(&j, q)?
        }
    })
}

pub fn is_split_cmd(input: &OrderInput, cfg: &RunConfig) -> Result<Verdict> {
    let e = order_from(input, cfg.q)?;
    let (split, _, cert) = is_split(&e);
    let text = format!(
        "{}\n{}\n",
        if split { "split" } else { "non-split" },
        serde_json::to_string_pretty(&cert)?
    );
    emit(&text, cfg.out.as_deref())?;
    Ok(if split { Verdict::Yes } else { Verdict::No })
}

pub fn cgraph(level: &str, place: Option<&str>, seed_file: Option<&Path>, cfg: &RunConfig) -> Result<Verdict> {
    let q = cfg.q;
    let level = parse_divisor(level, q)?;
    let place = match place {
        Some(s) => parse_place(s, q)?,
        None => default_place(&level),
    };
    let seeds = match seed_file {
        Some(p) => {
            let js: Vec<OrderJson> = serde_json::from_str(&read(p)?)?;
            js.iter()
                .map(|j| EichlerOrder::from_json(j, q))
                .collect::<Result<Vec<_>, _>>()?
        }
        None => default_seeds(&level, &place)?,
    };
    let g = build_cgraph(&level, &place, cfg.depth, &seeds)?;
    emit(&export_graph(&g, cfg.format), cfg.out.as_deref())?;
    Ok(Verdict::Yes)
}

fn write_pair(dir: &Path, id: &str, g: &eichler_core::cgraph::QuotientGraph) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (f, ext) in [(Format::Dot, "dot"), (Format::Json, "json")] {
        let p = dir.join(format!("{id}.{ext}"));
        std::fs::write(&p, export_graph(g, f)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn print_report(r: &VerificationReport) {
    println!(
        "  q={} D={} Q={} depth={}: {} classes, {} non-split{}",
        r.q,
        r.level,
        r.place,
        r.depth,
        r.classes_found,
        r.nonsplit.len(),
        match r.pass {
            Some(true) => " [pass]",
            Some(false) => " [FAIL]",
            None => "",
        }
    );
}

pub fn verify(id: &str, cfg: &RunConfig) -> Result<Verdict> {
    let q = cfg.q;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let pass = if FIGURES.contains(&id) {
        let g = figure_graph(id, q, cfg.depth)?;
        write_pair(&dir, id, &g)?;
        let c = check_figure(id, &g)?;
        for n in &c.notes {
            println!("  {n}");
        }
        std::fs::write(dir.join(format!("{id}.report.json")), serde_json::to_string_pretty(&c)?)?;
        c.pass
    } else if id == "thm2" {
        let r = verify_theorem2(&[q], cfg.depth)?;
        r.cases.iter().for_each(print_report);
        std::fs::create_dir_all(&dir)?;
        std::fs::write(dir.join("thm2.report.json"), serde_json::to_string_pretty(&r)?)?;
        r.pass
    } else if id == "thm1-desk" {
        thm1_desk(q, cfg.depth, &dir)?
    } else {
        bail!("unknown verification id {id:?}; expected one of fig1a, fig1c, fig1d, fig4b, thm2, thm1-desk");
    };
    println!("{id}: {}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { Verdict::Yes } else { Verdict::No })
}

/// Exactly one non-split class at P1+P2+P3, and a non-split count at 2P1
/// that grows with the depth.
fn thm1_desk(q: u8, depth: usize, dir: &Path) -> Result<bool> {
    let p = standard_places(q);
    let pt = |i: usize| Divisor::place(q, p[i].clone());
    let three = &(&pt(0) + &pt(1)) + &pt(2);
    let r3 = count_nonsplit_classes(&three, &default_place(&three), depth)?.expect(Expectation::NonSplitExactly(1));
    print_report(&r3);
    let two_p = pt(0).scale(2);
    let place = default_place(&two_p);
    let mut counts = Vec::new();
    let mut reports = vec![r3.clone()];
    for n in 2..=depth.max(2) {
        let r = count_nonsplit_classes(&two_p, &place, n)?;
        print_report(&r);
        counts.push(r.nonsplit.len());
        reports.push(r);
    }
    let growing = counts.windows(2).all(|w| w[1] > w[0]);
    println!("  non-split counts at 2P1 by depth: {counts:?}");
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("thm1-desk.report.json"), serde_json::to_string_pretty(&reports)?)?;
    Ok(r3.pass == Some(true) && growing)
}
