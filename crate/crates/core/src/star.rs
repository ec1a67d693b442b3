//! The star product of symmetric bimodal data with a right factor.
//!
//! The left factor contributes its half block `W` (and `conj W`); each
//! letter of the right factor selects the symbols inserted between copies
//! of the half blocks. Which table is used depends on the M-parity of `W`.

use std::fmt;

use serde::Serialize;

use crate::admissibility::is_admissible_bimodal;
use crate::error::{Error, Result};
use crate::kneading::{KneadingData, KneadingKind};
use crate::sequence::{Parity, Sequence};
use crate::symbol::{Alphabet, Symbol};
use crate::trees::{f_node, factor_to_unimodal, unimodal_pair_to_g};

use Symbol::{UniC, UniL, UniR, A, B, C, L, M, R, U};

/// Inserted symbols keyed by a letter of the right factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubstitutionTable {
    pub name: &'static str,
    pub parity: Parity,
    pub entries: &'static [(Symbol, &'static [Symbol])],
}

impl SubstitutionTable {
    pub fn get(&self, z: Symbol) -> Option<&'static [Symbol]> {
        self.entries.iter().find(|(k, _)| *k == z).map(|(_, v)| *v)
    }

    fn lookup(&self, z: Symbol) -> Result<&'static [Symbol]> {
        self.get(z).ok_or_else(|| Error::UnsupportedSymbol {
            symbol: z.to_char(),
            context: format!("the {} table ({} parity)", self.name, self.parity),
        })
    }
}

impl fmt::Display for SubstitutionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}):", self.name, self.parity)?;
        for (k, v) in self.entries {
            write!(f, " {k}->")?;
            for s in *v {
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

const T1_A_EVEN: SubstitutionTable = SubstitutionTable {
    name: "type-1 c1",
    parity: Parity::Even,
    entries: &[(UniR, &[M]), (UniC, &[A]), (UniL, &[L])],
};
const T1_A_ODD: SubstitutionTable = SubstitutionTable {
    name: "type-1 c1",
    parity: Parity::Odd,
    entries: &[(UniR, &[L]), (UniC, &[A]), (UniL, &[M])],
};
const T1_B_EVEN: SubstitutionTable = SubstitutionTable {
    name: "type-1 c2",
    parity: Parity::Even,
    entries: &[(UniR, &[M]), (UniC, &[B]), (UniL, &[R])],
};
const T1_B_ODD: SubstitutionTable = SubstitutionTable {
    name: "type-1 c2",
    parity: Parity::Odd,
    entries: &[(UniR, &[R]), (UniC, &[B]), (UniL, &[M])],
};

// entries are (inserted after W, inserted after conj W)
const T2_EVEN: SubstitutionTable = SubstitutionTable {
    name: "type-2",
    parity: Parity::Even,
    entries: &[
        (L, &[M, M]),
        (A, &[M, A]),
        (M, &[M, L]),
        (B, &[B, L]),
        (R, &[R, L]),
        (C, &[R, A]),
        (U, &[R, M]),
    ],
};
const T2_ODD: SubstitutionTable = SubstitutionTable {
    name: "type-2",
    parity: Parity::Odd,
    entries: &[
        (L, &[R, L]),
        (A, &[R, A]),
        (M, &[R, M]),
        (B, &[B, M]),
        (R, &[M, M]),
        (C, &[M, A]),
        (U, &[M, L]),
    ],
};
const T3_EVEN: SubstitutionTable = SubstitutionTable {
    name: "type-3 c2",
    parity: Parity::Even,
    entries: &[
        (L, &[M, M]),
        (M, &[M, L]),
        (B, &[B, L]),
        (R, &[R, L]),
        (U, &[R, M]),
    ],
};
const T3_ODD: SubstitutionTable = SubstitutionTable {
    name: "type-3 c2",
    parity: Parity::Odd,
    entries: &[
        (L, &[R, L]),
        (M, &[R, M]),
        (B, &[B, M]),
        (R, &[M, M]),
        (U, &[M, L]),
    ],
};

fn pick(parity: Parity, even: SubstitutionTable, odd: SubstitutionTable) -> SubstitutionTable {
    if parity.is_even() {
        even
    } else {
        odd
    }
}

pub fn type1_tables(parity: Parity) -> (SubstitutionTable, SubstitutionTable) {
    (
        pick(parity, T1_A_EVEN, T1_A_ODD),
        pick(parity, T1_B_EVEN, T1_B_ODD),
    )
}

pub fn type2_table(parity: Parity) -> SubstitutionTable {
    pick(parity, T2_EVEN, T2_ODD)
}

pub fn type3_table(parity: Parity) -> SubstitutionTable {
    pick(parity, T3_EVEN, T3_ODD)
}

fn bimodal(symbols: Vec<Symbol>) -> Result<Sequence> {
    Sequence::periodic(symbols, Alphabet::Bimodal)
}

fn parity_of(w: &[Symbol]) -> Parity {
    Parity::of_count(w.iter().filter(|&&s| s == M).count())
}

/// Half blocks `W` and `conj W` of a doubly stable orbit `W B conj(W) A`.
fn orbit_halves(f: &KneadingData) -> Result<(Vec<Symbol>, Vec<Symbol>, Parity)> {
    if f.kind() != KneadingKind::DoublyStable {
        return Err(Error::TypeMismatch(format!(
            "{f} is not a doubly stable orbit"
        )));
    }
    let s = f.first().symbols();
    let split = f.split().expect("orbit contains B");
    let w = s[..split - 1].to_vec();
    let wb = s[split..s.len() - 1].to_vec();
    let (pw, pwb) = (parity_of(&w), parity_of(&wb));
    if pw != pwb {
        return Err(Error::UnsupportedParity(format!(
            "{f}: the half blocks have {pw} and {pwb} M-parity"
        )));
    }
    Ok((w, wb, pw))
}

/// `(W A, conj(W) B) * (X, X)`.
pub fn star_type1(f: &KneadingData, g: &KneadingData) -> Result<KneadingData> {
    if f.kind() != KneadingKind::BimodalPair {
        return Err(Error::TypeMismatch(format!(
            "type 1 needs a pair of stable orbits on the left, got {f}"
        )));
    }
    if g.kind() != KneadingKind::Unimodal {
        return Err(Error::TypeMismatch(format!(
            "type 1 needs a duplicated unimodal pair on the right, got {g}"
        )));
    }
    let (p, q) = f.critical_sequences()?;
    let w = &p.symbols()[..p.len() - 1];
    let wb = &q.symbols()[..q.len() - 1];
    let (pw, pwb) = (parity_of(w), parity_of(wb));
    if pw != pwb {
        return Err(Error::UnsupportedParity(format!(
            "{f}: the components have {pw} and {pwb} M-parity"
        )));
    }
    let (ta, tb) = type1_tables(pw);
    let x = g.first().symbols();
    let mut first = Vec::with_capacity(p.len() * x.len());
    let mut second = Vec::with_capacity(q.len() * x.len());
    for &s in &x[..x.len() - 1] {
        first.extend_from_slice(w);
        first.extend_from_slice(ta.lookup(s)?);
        second.extend_from_slice(wb);
        second.extend_from_slice(tb.lookup(s)?);
    }
    first.extend_from_slice(w);
    first.push(A);
    second.extend_from_slice(wb);
    second.push(B);
    KneadingData::pair(bimodal(first)?, bimodal(second)?)
}

/// Blocks `W b conj(W) a` for each letter, the last `a` forced to `A`.
fn type2_blocks(
    w: &[Symbol],
    wb: &[Symbol],
    table: SubstitutionTable,
    letters: &[Symbol],
) -> Result<Vec<Symbol>> {
    let mut out = Vec::with_capacity(letters.len() * (2 * w.len() + 2));
    for (i, &z) in letters.iter().enumerate() {
        let ins = table.lookup(z)?;
        out.extend_from_slice(w);
        out.push(ins[0]);
        out.extend_from_slice(wb);
        out.push(if i + 1 == letters.len() { A } else { ins[1] });
    }
    Ok(out)
}

/// `W B conj(W) A * X B Y D` for a single factor word.
pub fn star_type2(f: &KneadingData, g: &KneadingData) -> Result<KneadingData> {
    let (w, wb, parity) = orbit_halves(f)?;
    if g.kind() != KneadingKind::FactorWord {
        return Err(Error::TypeMismatch(format!(
            "type 2 needs a single factor word on the right, got {g}"
        )));
    }
    let z = g.first().symbols();
    let separators = z.iter().filter(|&&s| s == B).count();
    if separators != 1 || z.last() == Some(&B) || !matches!(z.last(), Some(A) | Some(C)) {
        return Err(Error::TypeMismatch(format!(
            "{g} is not of the form X B Y D with a single separator B and D in {{A, C}}"
        )));
    }
    let out = type2_blocks(&w, &wb, type2_table(parity), z)?;
    KneadingData::doubly_stable(bimodal(out)?)
}

/// `W B conj(W) A * (X D, Y B)`.
pub fn star_type3(f: &KneadingData, g: &KneadingData) -> Result<KneadingData> {
    let (w, wb, parity) = orbit_halves(f)?;
    if g.kind() != KneadingKind::FactorPair {
        return Err(Error::TypeMismatch(format!(
            "type 3 needs a factor pair on the right, got {g}"
        )));
    }
    let x = g.first().symbols();
    let y = g.second().expect("pair").symbols();
    if let Some(pos) = x.iter().position(|&s| s == B) {
        return Err(Error::ForbiddenSymbol {
            symbol: 'B',
            context: format!("the first component of {g} (index {pos})"),
        });
    }
    if x.len() != y.len() || y.last() != Some(&B) || !matches!(x.last(), Some(A) | Some(C)) {
        return Err(Error::TypeMismatch(format!(
            "{g} is not of the form (X D, Y B) with equal lengths and D in {{A, C}}"
        )));
    }
    let first = type2_blocks(&w, &wb, type2_table(parity), x)?;

    // The second component is read off one step before c2 and shifted.
    let t3 = type3_table(parity);
    let mut rotated = Vec::with_capacity(first.len());
    for &z in std::iter::once(&B).chain(&y[..y.len() - 1]) {
        let ins = t3.lookup(z)?;
        rotated.push(ins[0]);
        rotated.extend_from_slice(&wb);
        rotated.push(ins[1]);
        rotated.extend_from_slice(&w);
    }
    let mut second = rotated[1..].to_vec();
    second.push(B);
    KneadingData::pair(bimodal(first)?, bimodal(second)?)
}

/// One of the three product rules.
pub trait StarRule: Send + Sync {
    fn name(&self) -> &'static str;
    fn accepts(&self, f: KneadingKind, g: KneadingKind) -> bool;
    fn apply(&self, f: &KneadingData, g: &KneadingData) -> Result<KneadingData>;
}

struct Type1;
struct Type2;
struct Type3;

impl StarRule for Type1 {
    fn name(&self) -> &'static str {
        "type-1"
    }

    fn accepts(&self, f: KneadingKind, g: KneadingKind) -> bool {
        f == KneadingKind::BimodalPair && g == KneadingKind::Unimodal
    }

    fn apply(&self, f: &KneadingData, g: &KneadingData) -> Result<KneadingData> {
        star_type1(f, g)
    }
}

impl StarRule for Type2 {
    fn name(&self) -> &'static str {
        "type-2"
    }

    fn accepts(&self, f: KneadingKind, g: KneadingKind) -> bool {
        f == KneadingKind::DoublyStable && g == KneadingKind::FactorWord
    }

    fn apply(&self, f: &KneadingData, g: &KneadingData) -> Result<KneadingData> {
        star_type2(f, g)
    }
}

impl StarRule for Type3 {
    fn name(&self) -> &'static str {
        "type-3"
    }

    fn accepts(&self, f: KneadingKind, g: KneadingKind) -> bool {
        f == KneadingKind::DoublyStable && g == KneadingKind::FactorPair
    }

    fn apply(&self, f: &KneadingData, g: &KneadingData) -> Result<KneadingData> {
        star_type3(f, g)
    }
}

pub struct StarRegistry {
    rules: Vec<Box<dyn StarRule>>,
}

impl StarRegistry {
    pub fn empty() -> StarRegistry {
        StarRegistry { rules: Vec::new() }
    }

    pub fn register(&mut self, rule: Box<dyn StarRule>) {
        self.rules.push(rule);
    }

    pub fn rule_for(&self, f: KneadingKind, g: KneadingKind) -> Option<&dyn StarRule> {
        self.rules
            .iter()
            .find(|r| r.accepts(f, g))
            .map(|r| r.as_ref())
    }

    pub fn get(&self, name: &str) -> Option<&dyn StarRule> {
        self.rules
            .iter()
            .find(|r| r.name() == name)
            .map(|r| r.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.name()).collect()
    }
}

impl Default for StarRegistry {
    fn default() -> StarRegistry {
        let mut r = StarRegistry::empty();
        r.register(Box::new(Type1));
        r.register(Box::new(Type2));
        r.register(Box::new(Type3));
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarProduct {
    pub rule: &'static str,
    pub product: KneadingData,
}

/// Validate both factors and apply the matching rule.
pub fn star(f: &KneadingData, g: &KneadingData) -> Result<StarProduct> {
    factor_to_unimodal(g)?;
    if !f.is_bimodal() || !f.is_symmetric() {
        return Err(Error::TypeMismatch(format!(
            "the left factor {f} is not symmetric bimodal data"
        )));
    }
    if !is_admissible_bimodal(f)? {
        return Err(Error::NotAdmissible(f.to_string()));
    }
    let registry = StarRegistry::default();
    let rule = registry.rule_for(f.kind(), g.kind()).ok_or_else(|| {
        Error::TypeMismatch(format!("no product rule combines {f} with {g}"))
    })?;
    Ok(StarProduct {
        rule: rule.name(),
        product: rule.apply(f, g)?,
    })
}

/// The classical product of unimodal sequences: every letter of `y`
/// becomes a copy of `x`'s block followed by `x`'s reading of that letter.
pub fn unimodal_star(x: &Sequence, y: &Sequence) -> Result<Sequence> {
    let xs = x.symbols();
    let w = &xs[..xs.len() - 1];
    let odd = !Parity::of_count(w.iter().filter(|&&s| s == UniR).count()).is_even();
    let mut out = Vec::with_capacity(xs.len() * y.len());
    for &s in y.symbols() {
        out.extend_from_slice(w);
        out.push(match (s, odd) {
            (UniL, true) => UniR,
            (UniR, true) => UniL,
            (s, _) => s,
        });
    }
    Sequence::periodic(out, Alphabet::Unimodal)
}

/// The right factor in the form the star product expects for a unimodal
/// sequence: the duplicated pair on the left of a stable pair, the factor
/// translation on the left of a doubly stable orbit.
pub fn lift_factor(f: &KneadingData, x: &Sequence) -> Result<KneadingData> {
    match f.kind() {
        KneadingKind::BimodalPair => KneadingData::unimodal_pair(x.clone(), x.clone()),
        KneadingKind::DoublyStable => unimodal_pair_to_g(&f_node(x, x.len() - 2)),
        _ => Err(Error::TypeMismatch(format!("{f} is not bimodal data"))),
    }
}

/// Both bracketings of `f * x * y`, for experiments; nothing is asserted.
pub fn associativity_experiment(
    f: &KneadingData,
    x: &Sequence,
    y: &Sequence,
) -> Result<(KneadingData, KneadingData)> {
    let left = star(f, &lift_factor(f, x)?)?.product;
    let left = star(&left, &lift_factor(&left, y)?)?.product;
    let xy = unimodal_star(x, y)?;
    let right = star(f, &lift_factor(f, &xy)?)?.product;
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneading::parse_kneading;

    fn k(s: &str) -> KneadingData {
        parse_kneading(s).unwrap()
    }

    fn prod(f: &str, g: &str) -> String {
        star(&k(f), &k(g)).unwrap().product.to_string()
    }

    #[test]
    fn worked_products() {
        assert_eq!(
            prod("(RMMA,LMMB)", "(rlc,rlc)"),
            "(RMMMRMMLRMMA,LMMMLMMRLMMB)"
        );
        assert_eq!(prod("RBLA", "ULBLA"), "RRLMRMLMRBLLRMLMRMLA");
        assert_eq!(prod("RBLA", "(UA,LB)"), "(RRLMRMLA,LLRMLMRB)");
    }

    #[test]
    fn small_products() {
        assert_eq!(prod("(RA,LB)", "(rc,rc)"), "(RMRA,LMLB)");
        assert_eq!(prod("RBLA", "UBA"), "RRLMRBLLRMLA");
        assert_eq!(prod("RBLA", "(C,B)"), "(RRLA,LLRB)");
        assert_eq!(prod("(RMMA,LMMB)", "c"), "(RMMA,LMMB)");
    }

    #[test]
    fn dispatch_and_errors() {
        assert_eq!(star(&k("(RMMA,LMMB)"), &k("rlc")).unwrap().rule, "type-1");
        assert_eq!(star(&k("RBLA"), &k("ULBLA")).unwrap().rule, "type-2");
        assert_eq!(star(&k("RBLA"), &k("(UA,LB)")).unwrap().rule, "type-3");
        assert!(matches!(
            star(&k("(RMMA,LMMB)"), &k("(RMMA,LMMB)")),
            Err(Error::NotAFactor(_))
        ));
        assert!(matches!(
            star_type2(&k("RBLA"), &k("ULLA")),
            Err(Error::TypeMismatch(_))
        ));
        assert!(matches!(
            star_type3(&k("RBLA"), &k("(UB,LB)")),
            Err(Error::ForbiddenSymbol { symbol: 'B', .. })
        ));
        assert!(matches!(
            star_type1(&k("RBLA"), &k("rlc")),
            Err(Error::TypeMismatch(_))
        ));
        assert!(matches!(
            star_type3(&k("RBLA"), &k("(UC,AB)")),
            Err(Error::UnsupportedSymbol { symbol: 'A', .. })
        ));
        assert!(matches!(
            star(&k("RBLA"), &k("(rlc,rlc)")),
            Err(Error::TypeMismatch(_))
        ));
    }

    #[test]
    fn unimodal_product() {
        let u = |s: &str| Sequence::parse(s, Alphabet::Unimodal, true).unwrap();
        // period doubling of rc is rlrc
        assert_eq!(unimodal_star(&u("rc"), &u("rc")).unwrap().to_string(), "rlrc");
        assert_eq!(unimodal_star(&u("rlc"), &u("rc")).unwrap().to_string(), "rllrlc");
    }
}
