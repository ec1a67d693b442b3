//! The trees of symmetric bimodal data, of unimodal sequences, and of the
//! right factors of the star product.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::admissibility::{is_admissible_bimodal, is_admissible_unimodal, within_d1_bounds};
use crate::error::{Error, Result};
use crate::kneading::{KneadingData, KneadingKind};
use crate::sequence::{Parity, Sequence};
use crate::symbol::{Alphabet, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    D1,
    T,
    U,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::D1, Family::T, Family::U, Family::F, Family::G];

    pub fn name(self) -> &'static str {
        match self {
            Family::D1 => "D1",
            Family::T => "T",
            Family::U => "U",
            Family::F => "F",
            Family::G => "G",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown tree family {s:?}")))
    }
}

/// Label of a tree edge: the symbol appended to the parent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `(X, conj X)` appended to both halves of a symmetric datum.
    Conjugate(Symbol),
    Letter(Symbol),
}

impl Branch {
    pub fn symbol(self) -> Symbol {
        match self {
            Branch::Conjugate(s) | Branch::Letter(s) => s,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Conjugate(s) => write!(f, "({s},{s}\u{0304})"),
            Branch::Letter(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeValue {
    Datum(KneadingData),
    Word(Sequence),
    WordPair(Sequence, Sequence),
}

impl fmt::Display for NodeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeValue::Datum(d) => write!(f, "{d}"),
            NodeValue::Word(w) if w.is_empty() => f.write_str("ε"),
            NodeValue::Word(w) => write!(f, "{w}"),
            NodeValue::WordPair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub value: NodeValue,
    /// Index of the parent in the previous level.
    pub parent: Option<usize>,
    pub branch: Option<Branch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KneadingTree {
    pub family: Family,
    pub levels: Vec<Vec<TreeNode>>,
}

impl KneadingTree {
    fn grow<T: Clone>(
        family: Family,
        root: T,
        depth: usize,
        children: impl Fn(&T, usize) -> Result<Vec<(Branch, T)>>,
        value: impl Fn(&T, usize) -> NodeValue,
    ) -> Result<KneadingTree> {
        let mut raw = vec![vec![(root, None, None)]];
        for level in 1..=depth {
            let mut next = Vec::new();
            for (i, (parent, _, _)) in raw[level - 1].iter().enumerate() {
                for (b, child) in children(parent, level - 1)? {
                    next.push((child, Some(i), Some(b)));
                }
            }
            raw.push(next);
        }
        let levels = raw
            .into_iter()
            .enumerate()
            .map(|(level, nodes)| {
                nodes
                    .into_iter()
                    .map(|(t, parent, branch)| TreeNode {
                        value: value(&t, level),
                        parent,
                        branch,
                    })
                    .collect()
            })
            .collect();
        Ok(KneadingTree { family, levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, level: usize) -> Vec<String> {
        self.levels[level].iter().map(|n| n.value.to_string()).collect()
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, &TreeNode)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(l, nodes)| nodes.iter().map(move |n| (l, n)))
    }

    /// One line per level, nodes separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for level in 0..self.levels.len() {
            out.push_str(&self.labels(level).join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .levels
            .iter()
            .enumerate()
            .flat_map(|(level, nodes)| {
                nodes.iter().enumerate().map(move |(index, n)| {
                    json!({
                        "level": level,
                        "index": index,
                        "text": n.value.to_string(),
                        "parent": n.parent,
                        "branch": n.branch.map(|b| b.to_string()),
                    })
                })
            })
            .collect();
        json!({ "family": self.family.name(), "depth": self.depth(), "nodes": nodes })
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph {} {{\n  node [shape=box];\n", self.family);
        for (level, nodes) in self.levels.iter().enumerate() {
            for (i, n) in nodes.iter().enumerate() {
                out.push_str(&format!(
                    "  n{level}_{i} [label=\"{}\"];\n",
                    n.value.to_string().replace('"', "\\\"")
                ));
                if let (Some(p), Some(b)) = (n.parent, n.branch) {
                    out.push_str(&format!(
                        "  n{}_{p} -> n{level}_{i} [label=\"{b}\"];\n",
                        level - 1
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A tree generator selectable by name.
pub trait TreeFamily: Send + Sync {
    fn family(&self) -> Family;
    fn generate(&self, depth: usize) -> Result<KneadingTree>;
}

fn bimodal(symbols: Vec<Symbol>, periodic: bool) -> Sequence {
    Sequence::new(symbols, Alphabet::Bimodal, periodic).expect("bimodal symbols")
}

fn conj_word(w: &[Symbol]) -> Vec<Symbol> {
    w.iter()
        .map(|s| s.conjugate().expect("bimodal symbol"))
        .collect()
}

fn half_word(d: &KneadingData) -> Vec<Symbol> {
    d.half_block().expect("kneading block").symbols().to_vec()
}

/// Child of a symmetric datum obtained by appending `(x, conj x)`.
///
/// A pair `(W A, conj(W) B)` produces the doubly stable orbit
/// `W x B conj(W x) A`; a doubly stable `W B conj(W) A` produces the pair
/// `(W x A, conj(W x) B)`.
pub fn d1_child(parent: &KneadingData, x: Symbol) -> Result<KneadingData> {
    if !parent.is_symmetric() {
        return Err(Error::NotInD1(parent.to_string()));
    }
    let mut w = half_word(parent);
    w.push(x);
    let wb = conj_word(&w);
    match parent.kind() {
        KneadingKind::BimodalPair => {
            let mut s = w;
            s.push(Symbol::B);
            s.extend(wb);
            s.push(Symbol::A);
            KneadingData::doubly_stable(bimodal(s, true))
        }
        KneadingKind::DoublyStable => {
            let (mut p, mut q) = (w, wb);
            p.push(Symbol::A);
            q.push(Symbol::B);
            KneadingData::pair(bimodal(p, true), bimodal(q, true))
        }
        _ => Err(Error::NotInD1(parent.to_string())),
    }
}

/// A candidate child survives if it is admissible and stays inside the
/// bounds of the tree.
pub fn d1_accepts(child: &KneadingData) -> Result<bool> {
    Ok(is_admissible_bimodal(child)? && within_d1_bounds(child)?)
}

/// Branch letters of a node in the order its children are listed.
pub fn d1_branch_order(parent: &KneadingData) -> Result<[Symbol; 2]> {
    let even = Sequence::finite(half_word(parent), Alphabet::Bimodal)?
        .m_parity()
        .is_even();
    Ok(match (parent.kind(), even) {
        (KneadingKind::BimodalPair, true) => [Symbol::L, Symbol::M],
        (KneadingKind::BimodalPair, false) => [Symbol::M, Symbol::L],
        (KneadingKind::DoublyStable, true) => [Symbol::M, Symbol::R],
        (KneadingKind::DoublyStable, false) => [Symbol::R, Symbol::M],
        _ => return Err(Error::NotInD1(parent.to_string())),
    })
}

pub fn d1_children(parent: &KneadingData) -> Result<Vec<(Symbol, KneadingData)>> {
    let mut out = Vec::with_capacity(2);
    for x in d1_branch_order(parent)? {
        let child = d1_child(parent, x)?;
        if d1_accepts(&child)? {
            out.push((x, child));
        }
    }
    Ok(out)
}

pub fn d1_root() -> KneadingData {
    KneadingData::pair(
        bimodal(vec![Symbol::R, Symbol::A], true),
        bimodal(vec![Symbol::L, Symbol::B], true),
    )
    .expect("root datum")
}

/// Child indices leading from the root to `d`.
pub fn d1_address(d: &KneadingData) -> Result<Vec<usize>> {
    let not_in = || Error::NotInD1(d.to_string());
    if !d.is_bimodal() || !d.is_symmetric() {
        return Err(not_in());
    }
    let w = half_word(d);
    if w.is_empty() {
        return Err(not_in());
    }
    // level = |W| - 1; even levels hold pairs
    let level = w.len() - 1;
    let expected = if level % 2 == 0 {
        KneadingKind::BimodalPair
    } else {
        KneadingKind::DoublyStable
    };
    if d.kind() != expected {
        return Err(not_in());
    }
    let mut node = d1_root();
    if half_word(&node) != w[..1] {
        return Err(not_in());
    }
    let mut address = Vec::with_capacity(level);
    for &x in &w[1..] {
        let children = d1_children(&node)?;
        let i = children
            .iter()
            .position(|(b, _)| *b == x)
            .ok_or_else(not_in)?;
        address.push(i);
        node = children[i].1.clone();
    }
    if &node != d {
        return Err(not_in());
    }
    Ok(address)
}

pub fn d1_at(address: &[usize]) -> Option<KneadingData> {
    let mut node = d1_root();
    for &i in address {
        node = d1_children(&node).ok()?.into_iter().nth(i)?.1;
    }
    Some(node)
}

fn unimodal(symbols: Vec<Symbol>) -> Sequence {
    Sequence::new(symbols, Alphabet::Unimodal, true).expect("unimodal symbols")
}

pub fn u_root() -> Sequence {
    unimodal(vec![Symbol::UniR, Symbol::UniC])
}

/// Admissible children `W l c`, `W r c` of `W c`, ordered by the parity of
/// the number of `r` in `W`.
pub fn u_children(x: &Sequence) -> Result<Vec<(Symbol, Sequence)>> {
    let w = &x.symbols()[..x.len() - 1];
    let order = if Parity::of_count(w.iter().filter(|&&s| s == Symbol::UniR).count()).is_even() {
        [Symbol::UniL, Symbol::UniR]
    } else {
        [Symbol::UniR, Symbol::UniL]
    };
    let mut out = Vec::with_capacity(2);
    for s in order {
        let mut y = w.to_vec();
        y.push(s);
        y.push(Symbol::UniC);
        let y = unimodal(y);
        if is_admissible_unimodal(&y)? {
            out.push((s, y));
        }
    }
    Ok(out)
}

pub fn u_address(x: &Sequence) -> Result<Vec<usize>> {
    let not_adm = || Error::NotAdmissible(x.to_string());
    if x.alphabet() != Alphabet::Unimodal || x.len() < 2 || x.last() != Some(Symbol::UniC) {
        return Err(not_adm());
    }
    let x = x.with_periodic(true)?;
    let w = &x.symbols()[..x.len() - 1];
    if w[0] != Symbol::UniR {
        return Err(not_adm());
    }
    let mut node = u_root();
    let mut address = Vec::with_capacity(w.len() - 1);
    for &s in &w[1..] {
        let children = u_children(&node)?;
        let i = children
            .iter()
            .position(|(b, _)| *b == s)
            .ok_or_else(not_adm)?;
        address.push(i);
        node = children[i].1.clone();
    }
    Ok(address)
}

pub fn u_at(address: &[usize]) -> Option<Sequence> {
    let mut node = u_root();
    for &i in address {
        node = u_children(&node).ok()?.into_iter().nth(i)?.1;
    }
    Some(node)
}

/// The unimodal sequence at the same tree address as `d`.
pub fn d1_to_unimodal(d: &KneadingData) -> Result<Sequence> {
    let address = d1_address(d)?;
    u_at(&address).ok_or_else(|| {
        Error::NotInD1(format!("{d} (no unimodal node at address {address:?})"))
    })
}

/// The node of the symmetric tree at the same address as `x`.
pub fn unimodal_to_d1(x: &Sequence) -> Result<KneadingData> {
    let address = u_address(x)?;
    d1_at(&address).ok_or_else(|| {
        Error::NotAdmissible(format!("{x} (no symmetric node at address {address:?})"))
    })
}

const TRANSLATION: [([Symbol; 2], Symbol); 7] = [
    ([Symbol::UniL, Symbol::UniL], Symbol::L),
    ([Symbol::UniL, Symbol::UniC], Symbol::A),
    ([Symbol::UniL, Symbol::UniR], Symbol::M),
    ([Symbol::UniC, Symbol::UniR], Symbol::B),
    ([Symbol::UniR, Symbol::UniR], Symbol::R),
    ([Symbol::UniR, Symbol::UniC], Symbol::C),
    ([Symbol::UniR, Symbol::UniL], Symbol::U),
];

/// Map consecutive 2-blocks of a unimodal word to factor letters.
pub fn translate(word: &Sequence) -> Result<Sequence> {
    if word.alphabet() != Alphabet::Unimodal {
        return Err(Error::AlphabetMismatch {
            expected: Alphabet::Unimodal,
            found: word.alphabet(),
        });
    }
    let s = word.symbols();
    let mut out = Vec::with_capacity(s.len() / 2);
    for chunk in s.chunks(2) {
        let block: String = chunk.iter().map(|x| x.to_char()).collect();
        let letter = TRANSLATION
            .iter()
            .find(|(b, _)| b[..] == *chunk)
            .map(|(_, l)| *l)
            .ok_or(Error::UntranslatableBlock(block))?;
        out.push(letter);
    }
    Sequence::finite(out, Alphabet::Factor)
}

/// Expand factor letters back into unimodal 2-blocks.
pub fn untranslate(word: &Sequence) -> Result<Sequence> {
    let mut out = Vec::with_capacity(2 * word.len());
    for (index, &letter) in word.symbols().iter().enumerate() {
        let (block, _) = TRANSLATION
            .iter()
            .find(|(_, l)| *l == letter)
            .ok_or(Error::UnknownSymbol {
                index,
                ch: letter.to_char(),
            })?;
        out.extend_from_slice(block);
    }
    Sequence::finite(out, Alphabet::Unimodal)
}

fn doubled(x: &Sequence) -> Sequence {
    let mut w = x.symbols().to_vec();
    w.extend_from_slice(x.symbols());
    Sequence::finite(w, Alphabet::Unimodal).expect("unimodal word")
}

fn shifted_pair(x: &Sequence) -> (Sequence, Sequence) {
    let a = x.with_periodic(false).expect("finite word");
    let b = x
        .shift(1)
        .and_then(|s| s.with_periodic(false))
        .expect("finite word");
    (a, b)
}

/// The node of the doubled tree built from a unimodal node: the word
/// written twice on odd levels, the pair `(X, σX)` on even levels.
pub fn f_node(x: &Sequence, level: usize) -> NodeValue {
    if level % 2 == 1 {
        NodeValue::Word(doubled(x))
    } else {
        let (a, b) = shifted_pair(x);
        NodeValue::WordPair(a, b)
    }
}

/// Translate a node of the doubled tree into the factor alphabet.
pub fn unimodal_pair_to_g(node: &NodeValue) -> Result<KneadingData> {
    match node {
        NodeValue::Word(w) => KneadingData::factor_word(translate(w)?),
        NodeValue::WordPair(a, b) => KneadingData::factor_pair(translate(a)?, translate(b)?),
        NodeValue::Datum(d) => Err(Error::TypeMismatch(format!(
            "{d} is not a unimodal word or pair"
        ))),
    }
}

/// Recover the unimodal sequence behind a right factor, checking that the
/// factor really has one of the two admissible shapes.
pub fn factor_to_unimodal(g: &KneadingData) -> Result<Sequence> {
    let not_factor = || Error::NotAFactor(g.to_string());
    let x = match g.kind() {
        KneadingKind::FactorWord => {
            let w = untranslate(g.first())?;
            let half = w.len() / 2;
            let (a, b) = w.symbols().split_at(half);
            if a != b || half % 2 == 0 {
                return Err(not_factor());
            }
            Sequence::periodic(a.to_vec(), Alphabet::Unimodal)?
        }
        KneadingKind::FactorPair => {
            let a = untranslate(g.first())?;
            let b = untranslate(g.second().expect("pair"))?;
            let x = a.with_periodic(true)?;
            if x.len() != a.len() || x.shift(1)?.symbols() != b.symbols() {
                return Err(not_factor());
            }
            x
        }
        KneadingKind::Unimodal => g.first().clone(),
        _ => return Err(not_factor()),
    };
    if x.last() != Some(Symbol::UniC)
        || x.count(Symbol::UniC) != 1
        || !is_admissible_unimodal(&x)?
    {
        return Err(not_factor());
    }
    Ok(x)
}

struct D1Tree;
struct FullTree;
struct UnimodalTree;
struct DoubledTree;
struct FactorTree;

impl TreeFamily for D1Tree {
    fn family(&self) -> Family {
        Family::D1
    }

    fn generate(&self, depth: usize) -> Result<KneadingTree> {
        KneadingTree::grow(
            Family::D1,
            d1_root(),
            depth,
            |d, _| {
                Ok(d1_children(d)?
                    .into_iter()
                    .map(|(x, c)| (Branch::Conjugate(x), c))
                    .collect())
            },
            |d, _| NodeValue::Datum(d.clone()),
        )
    }
}

impl TreeFamily for FullTree {
    fn family(&self) -> Family {
        Family::T
    }

    fn generate(&self, depth: usize) -> Result<KneadingTree> {
        KneadingTree::grow(
            Family::T,
            Vec::<Symbol>::new(),
            depth,
            |w, level| {
                let lr = w
                    .iter()
                    .filter(|&&s| s == Symbol::R || s == Symbol::L)
                    .count();
                let other = if level % 2 == 0 { Symbol::R } else { Symbol::L };
                let order = if lr % 2 == 0 {
                    [Symbol::M, other]
                } else {
                    [other, Symbol::M]
                };
                Ok(order
                    .into_iter()
                    .map(|s| {
                        let mut c = w.clone();
                        c.push(s);
                        (Branch::Letter(s), c)
                    })
                    .collect())
            },
            |w, _| NodeValue::Word(bimodal(w.clone(), false)),
        )
    }
}

fn grow_unimodal(
    family: Family,
    depth: usize,
    value: impl Fn(&Sequence, usize) -> NodeValue,
) -> Result<KneadingTree> {
    KneadingTree::grow(
        family,
        u_root(),
        depth,
        |x, _| {
            Ok(u_children(x)?
                .into_iter()
                .map(|(s, c)| (Branch::Letter(s), c))
                .collect())
        },
        value,
    )
}

impl TreeFamily for UnimodalTree {
    fn family(&self) -> Family {
        Family::U
    }

    fn generate(&self, depth: usize) -> Result<KneadingTree> {
        grow_unimodal(Family::U, depth, |x, _| {
            NodeValue::Datum(KneadingData::unimodal(x.clone()).expect("unimodal node"))
        })
    }
}

impl TreeFamily for DoubledTree {
    fn family(&self) -> Family {
        Family::F
    }

    fn generate(&self, depth: usize) -> Result<KneadingTree> {
        grow_unimodal(Family::F, depth, f_node)
    }
}

impl TreeFamily for FactorTree {
    fn family(&self) -> Family {
        Family::G
    }

    fn generate(&self, depth: usize) -> Result<KneadingTree> {
        grow_unimodal(Family::G, depth, |x, level| {
            NodeValue::Datum(unimodal_pair_to_g(&f_node(x, level)).expect("translatable node"))
        })
    }
}

/// Tree generators keyed by family.
pub struct TreeRegistry {
    entries: BTreeMap<Family, Box<dyn TreeFamily>>,
}

impl TreeRegistry {
    pub fn empty() -> TreeRegistry {
        TreeRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, generator: Box<dyn TreeFamily>) {
        self.entries.insert(generator.family(), generator);
    }

    pub fn get(&self, family: Family) -> Option<&dyn TreeFamily> {
        self.entries.get(&family).map(|b| b.as_ref())
    }

    pub fn families(&self) -> impl Iterator<Item = Family> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for TreeRegistry {
    fn default() -> TreeRegistry {
        let mut r = TreeRegistry::empty();
        r.register(Box::new(D1Tree));
        r.register(Box::new(FullTree));
        r.register(Box::new(UnimodalTree));
        r.register(Box::new(DoubledTree));
        r.register(Box::new(FactorTree));
        r
    }
}

pub fn generate_tree(family: Family, depth: usize) -> Result<KneadingTree> {
    TreeRegistry::default()
        .get(family)
        .ok_or_else(|| Error::InvalidArgument(format!("no generator for {family}")))?
        .generate(depth)
}
