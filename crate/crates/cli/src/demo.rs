//! Worked examples, printed as reference value next to computed value.

use std::sync::Arc;

use anyhow::Result;
use clap::ValueEnum;
use vague_core::specio::bundled;
use vague_core::{
    check_axioms, eval_measure, invert, judge, load_partition_str, parse, ConnectiveTriple, Error, FuzzySet,
    Judgement, SetOp, TConorm, TNorm, TargetVector, VaguePartition,
};

use crate::{num, solution_text, yes};

const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Name {
    Example51,
    Example44,
    Example45,
    Edgington,
    Intuitionistic,
}

#[derive(Default)]
struct Table {
    mismatches: usize,
}

impl Table {
    fn value(&mut self, label: &str, reference: f64, computed: f64) {
        let ok = (reference - computed).abs() <= TOLERANCE;
        self.row(label, &num(reference), &num(computed), ok);
    }

    fn flag(&mut self, label: &str, reference: bool, computed: bool) {
        self.row(label, yes(reference), yes(computed), reference == computed);
    }

    fn row(&mut self, label: &str, reference: &str, computed: &str, ok: bool) {
        if !ok {
            self.mismatches += 1;
        }
        let mark = if ok { "" } else { "  MISMATCH" };
        println!("  {label:<30} reference {reference:<8} computed {computed}{mark}");
    }

    fn finish(self) -> u8 {
        if self.mismatches == 0 {
            println!("all values match");
            0
        } else {
            println!("{} value(s) differ", self.mismatches);
            1
        }
    }
}

fn height() -> Result<(VaguePartition, ConnectiveTriple)> {
    Ok(load_partition_str(bundled::HEIGHT_NL_2006)?)
}

pub fn run(name: Name) -> Result<u8> {
    match name {
        Name::Example51 => heights(),
        Name::Example44 => crisp_ages(),
        Name::Example45 => ages(),
        Name::Edgington => edgington(),
        Name::Intuitionistic => intuitionistic(),
    }
}

fn heights() -> Result<u8> {
    let (p, _) = height()?;
    let mut tab = Table::default();
    println!("Heights of Dutch men (2006), partition short / medium / tall on [0, 3] m");
    println!("regular: {}", yes(p.is_regular()));
    let j = judge(&p, 1.5)?;
    println!("judgement at x = 1.5");
    tab.value("short(1.5)", 0.625, j.degree("short").unwrap_or(f64::NAN));
    // the source prose says 0.325; its own formula 2.5(x - 1.35) gives 0.375
    tab.value("medium(1.5) = 2.5(1.5 - 1.35)", 0.375, j.degree("medium").unwrap_or(f64::NAN));
    tab.value("tall(1.5)", 0.0, j.degree("tall").unwrap_or(f64::NAN));
    println!("  (the original text prints 0.325 for medium(1.5), a misprint)");
    let targets = TargetVector::parse_pairs(["short=0", "medium=0.4", "tall=0.6"], 0.0)?;
    let inv = invert(&p, &targets)?;
    println!("inverting short=0 medium=0.4 tall=0.6: {}", solution_text(&inv.solutions));
    match inv.solutions.components() {
        [c] if c.is_point() => tab.value("x", 1.92, c.lo),
        _ => tab.row("x", "1.92", &solution_text(&inv.solutions), false),
    }
    Ok(tab.finish())
}

fn crisp_ages() -> Result<u8> {
    let t = ConnectiveTriple::standard(TNorm::Minimum);
    let labels = ["[0, 40]", "(40, 80]", "(80, 120]", "(120, 160]", "(160, 200]"];
    let names = ["to40", "to80", "to120", "to160", "to200"];
    let j = Judgement::new(25.0, names.iter().zip([1.0, 0.0, 0.0, 0.0, 0.0]).map(|(n, d)| (*n, d)))?;
    println!("Crisp age classes on [0, 200], standard negation, min / max, x = 25");
    for (l, n) in labels.iter().zip(names) {
        println!("  M({l}) = {}", num(j.degree(n).unwrap_or(f64::NAN)));
    }
    let r = check_axioms(&j, &t);
    let mut tab = Table::default();
    tab.value("M(bot)", 0.0, eval_measure(&j, &t, &parse("bot")?)?);
    tab.value("M(top)", 1.0, eval_measure(&j, &t, &parse("top")?)?);
    tab.value("M([0, 40])", 1.0, j.degree("to40").unwrap_or(f64::NAN));
    tab.flag("axioms I and V", true, r.axiom1 && r.axiom5);
    tab.flag("regular", true, r.regular);
    tab.flag("normal", true, r.normal);
    tab.flag("crisp", true, r.crisp);
    Ok(tab.finish())
}

fn ages() -> Result<u8> {
    let t = ConnectiveTriple::standard(TNorm::Minimum);
    let j = Judgement::new(35.0, [("young", 0.6), ("old", 0.4)])?;
    println!("Man / Age, x = 35, M(young) = 0.6, M(old) = 0.4, standard negation, min / max");
    let r = check_axioms(&j, &t);
    let mut tab = Table::default();
    for (e, v) in [("young | old", 0.6), ("!old", 0.6), ("!young", 0.4), ("bot", 0.0), ("top", 1.0)] {
        tab.value(&format!("M({e})"), v, eval_measure(&j, &t, &parse(e)?)?);
    }
    tab.flag("axioms I and V", true, r.axiom1 && r.axiom5);
    tab.flag("regular", true, r.regular);
    tab.flag("normal", false, r.normal);
    Ok(tab.finish())
}

fn edgington() -> Result<u8> {
    let (colour, ct) = load_partition_str(bundled::BALL_COLOUR)?;
    let (size, st) = load_partition_str(bundled::BALL_SIZE)?;
    let red = FuzzySet::derive(Arc::new(colour), ct, parse("red")?)?;
    let small = FuzzySet::derive(Arc::new(size), st, parse("small")?)?;
    // (colour position, size position) of balls a, b, c
    let balls = [("a", 0.875, 0.5), ("b", 0.5, 0.5), ("c", 0.5, 0.875)];
    println!("Balls a, b, c; R = red (colour partition), S = small (size partition)");

    let mut tab = Table::default();
    let rejected = matches!(red.combine(&small, SetOp::And), Err(Error::CrossPartition))
        && matches!(red.combine(&small, SetOp::Or), Err(Error::CrossPartition));
    println!(
        "R ∩ S and R ∪ S: {}",
        if rejected { "rejected, R and S come from different partitions" } else { "accepted" }
    );
    tab.flag("cross-partition rejected", true, rejected);

    println!("forced pointwise min / max, ignoring the partitions:");
    let (and, or) = (TNorm::Minimum, TConorm::Maximum);
    let mut r = [0.0; 3];
    let mut s = [0.0; 3];
    for (i, &(_, c, z)) in balls.iter().enumerate() {
        r[i] = red.membership(c)?;
        s[i] = small.membership(z)?;
    }
    for (i, (v, name)) in [(1.0, "a"), (0.5, "b"), (0.5, "c")].into_iter().enumerate() {
        tab.value(&format!("R({name})"), v, r[i]);
    }
    for (i, (v, name)) in [(0.5, "a"), (0.5, "b"), (0.0, "c")].into_iter().enumerate() {
        tab.value(&format!("S({name})"), v, s[i]);
    }
    tab.value("(R ∩ S)(a)", 0.5, and.eval(r[0], s[0]));
    tab.value("(R ∩ S)(b)", 0.5, and.eval(r[1], s[1]));
    tab.value("(R ∪ S)(b)", 0.5, or.eval(r[1], s[1]));
    tab.value("(R ∪ S)(c)", 0.5, or.eval(r[2], s[2]));
    println!("  min cannot rank a above b for \"red and small\", nor max b above c for \"red or small\"");
    Ok(tab.finish())
}

fn intuitionistic() -> Result<u8> {
    let (p, _) = height()?;
    let mut tab = Table::default();
    println!("A_2 = medium; intuitionistic pair (μ, ν) with ν = 1 - μ");
    for x in [1.51, 1.92] {
        let j = judge(&p, x)?;
        let mu = j.degree("medium").unwrap_or(f64::NAN);
        tab.value(&format!("μ_A2({x})"), 0.4, mu);
        tab.value(&format!("ν_A2({x})"), 0.6, 1.0 - mu);
    }
    let (a, b) = (judge(&p, 1.51)?, judge(&p, 1.92)?);
    let show = |j: &Judgement| {
        j.degrees()
            .map(|(n, d)| format!("{n}={}", num(d)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("the pair (0.4, 0.6) is the same at both heights, so it cannot tell them apart;");
    println!("the judgements can:");
    println!("  x = 1.51: {}", show(&a));
    println!("  x = 1.92: {}", show(&b));
    Ok(tab.finish())
}
