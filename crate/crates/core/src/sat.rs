//! Executable 3-SAT reduction: builds a gadget graph whose NAC-colorings
//! correspond to satisfying assignments, with maximum degree five.
//!
//! The construction uses *trains*: braced ladders (every 4-cycle carries one
//! diagonal, so the whole ladder is triangle-connected and therefore
//! monochromatic). One train per literal plus a `t` and an `f` train carry
//! truth values as colors. Gadget edges are glued to trains through single
//! braced-ladder squares at prepared attachment slots, which keeps every
//! vertex at degree five or less:
//!
//! - the variable gadget `A_i` is a 7-cycle with class pattern
//!   (x, x, x, t, !x, !x, !x); it forbids both literal trains being the
//!   off color of `t`,
//! - the variable gadget `B_i` is a 4-cycle with pattern (x, t, !x, f);
//!   given `t != f` it forces the two literal trains apart,
//! - the clause gadget is a 7-cycle with pattern (t, l1, l1, l2, l2, l3, l3)
//!   whose literal edges are tied to their trains through 3-prism
//!   subgraphs, so some literal must match `t`'s color.

use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

use crate::graph::Graph;
use crate::search::NacColoring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    /// 1-based variable index.
    pub var: u32,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Lit {
        Lit { var, negated: false }
    }

    pub fn neg(var: u32) -> Lit {
        Lit { var, negated: true }
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var as usize - 1] != self.negated
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub variable_count: u32,
    pub clauses: Vec<[Lit; 3]>,
}

impl CnfFormula {
    pub fn new(variable_count: u32, clauses: Vec<[Lit; 3]>) -> Result<CnfFormula, FormulaError> {
        if variable_count == 0 {
            return Err(FormulaError::NoVariables);
        }
        for clause in &clauses {
            for lit in clause {
                if lit.var == 0 || lit.var > variable_count {
                    return Err(FormulaError::VariableOutOfRange { var: lit.var });
                }
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|lit| lit.holds(assignment)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaError {
    NoVariables,
    VariableOutOfRange { var: u32 },
}

impl fmt::Display for FormulaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaError::NoVariables => write!(f, "formula needs at least one variable"),
            FormulaError::VariableOutOfRange { var } => {
                write!(f, "variable {var} out of range")
            }
        }
    }
}

impl Error for FormulaError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsError {
    MissingHeader,
    BadHeader { line: usize },
    BadToken { token: String },
    VariableOutOfRange { var: i64 },
    ClauseTooLarge { clause: usize, len: usize },
    ClauseTooSmall { clause: usize, len: usize },
    UnterminatedClause,
    Formula(FormulaError),
}

impl fmt::Display for DimacsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimacsError::MissingHeader => write!(f, "missing 'p cnf' header"),
            DimacsError::BadHeader { line } => write!(f, "line {line}: malformed 'p cnf' header"),
            DimacsError::BadToken { token } => write!(f, "bad token {token:?}"),
            DimacsError::VariableOutOfRange { var } => write!(f, "variable {var} out of range"),
            DimacsError::ClauseTooLarge { clause, len } => {
                write!(f, "clause {clause} has {len} literals; exactly 3 are supported")
            }
            DimacsError::ClauseTooSmall { clause, len } => write!(
                f,
                "clause {clause} has {len} literals; pass --pad-clauses to repeat the last one"
            ),
            DimacsError::UnterminatedClause => write!(f, "last clause is not terminated by 0"),
            DimacsError::Formula(e) => write!(f, "{e}"),
        }
    }
}

impl Error for DimacsError {}

/// Parses DIMACS CNF. Clauses must have exactly three literals;
/// `pad_short_clauses` repeats the last literal of shorter clauses.
pub fn parse_dimacs(text: &str, pad_short_clauses: bool) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<u32> = None;
    let mut ints: Vec<i64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let mut it = line.split_whitespace();
            let (p, kind, n) = (it.next(), it.next(), it.next());
            if p != Some("p") || kind != Some("cnf") {
                return Err(DimacsError::BadHeader { line: idx + 1 });
            }
            let n: u32 = n
                .and_then(|t| t.parse().ok())
                .ok_or(DimacsError::BadHeader { line: idx + 1 })?;
            header = Some(n);
            continue;
        }
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| DimacsError::BadToken { token: tok.into() })?;
            ints.push(v);
        }
    }
    let n = header.ok_or(DimacsError::MissingHeader)?;
    let mut clauses: Vec<[Lit; 3]> = Vec::new();
    let mut cur: Vec<Lit> = Vec::new();
    for v in ints {
        if v == 0 {
            let idx = clauses.len() + 1;
            if cur.len() > 3 {
                return Err(DimacsError::ClauseTooLarge { clause: idx, len: cur.len() });
            }
            if cur.is_empty() {
                return Err(DimacsError::ClauseTooSmall { clause: idx, len: 0 });
            }
            if cur.len() < 3 {
                if !pad_short_clauses {
                    return Err(DimacsError::ClauseTooSmall { clause: idx, len: cur.len() });
                }
                while cur.len() < 3 {
                    cur.push(*cur.last().unwrap());
                }
            }
            clauses.push([cur[0], cur[1], cur[2]]);
            cur.clear();
        } else {
            if v.unsigned_abs() > n as u64 {
                return Err(DimacsError::VariableOutOfRange { var: v });
            }
            cur.push(Lit {
                var: v.unsigned_abs() as u32,
                negated: v < 0,
            });
        }
    }
    if !cur.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    CnfFormula::new(n, clauses).map_err(DimacsError::Formula)
}

/// Edge labels: every edge belongs to one train's color group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    T,
    F,
    Pos(u32),
    Neg(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::T => write!(f, "t"),
            Label::F => write!(f, "f"),
            Label::Pos(i) => write!(f, "x{i}"),
            Label::Neg(i) => write!(f, "~x{i}"),
        }
    }
}

/// The central cycles of the gadgets, for structural tests.
#[derive(Clone, Debug, Default)]
pub struct GadgetRegistry {
    /// Per variable: the 7-cycle of gadget A and the 4-cycle of gadget B.
    pub variable_cycles: Vec<(Vec<u32>, Vec<u32>)>,
    /// Per clause: the central 7-cycle.
    pub clause_cycles: Vec<Vec<u32>>,
    /// Ladder squares built per attachment slot.
    pub squares_per_slot: usize,
}

#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub graph: Graph,
    pub formula: CnfFormula,
    /// Label per edge index.
    pub labels: Vec<Label>,
    /// One representative edge per train.
    pub anchors: BTreeMap<Label, u32>,
    pub registry: GadgetRegistry,
    /// End rung of the `t` train's ladder, where density extensions attach.
    extension_end: (u32, u32),
}

struct Builder {
    edges: Vec<(u32, u32)>,
    labels: Vec<Label>,
    degree: Vec<u32>,
}

impl Builder {
    fn new() -> Builder {
        Builder {
            edges: Vec::new(),
            labels: Vec::new(),
            degree: Vec::new(),
        }
    }

    fn vertex(&mut self) -> u32 {
        self.degree.push(0);
        self.degree.len() as u32 - 1
    }

    fn edge(&mut self, u: u32, v: u32, label: Label) -> u32 {
        assert_ne!(u, v);
        self.degree[u as usize] += 1;
        self.degree[v as usize] += 1;
        assert!(
            self.degree[u as usize] <= 5 && self.degree[v as usize] <= 5,
            "degree bound violated at edge {u}-{v}"
        );
        self.edges.push((u.min(v), u.max(v)));
        self.labels.push(label);
        self.edges.len() as u32 - 1
    }
}

struct Train {
    label: Label,
    /// Attachment slots `(p, q)`: linking adds one edge at `p`, two at `q`.
    slots: Vec<(u32, u32)>,
    next_slot: usize,
    anchor: u32,
    end: (u32, u32),
}

const SQUARES_PER_SLOT: usize = 3;

/// A braced ladder with `slot_count` attachment slots. Squares use a
/// period-3 diagonal pattern (down, down, up) so that the top edge of every
/// middle square has endpoint degrees (4, 3), leaving room for one glued
/// square without exceeding degree five.
fn build_train(b: &mut Builder, label: Label, slot_count: usize) -> Train {
    let s = slot_count.max(1);
    let cols = SQUARES_PER_SLOT * s + 1;
    let bottom: Vec<u32> = (0..cols).map(|_| b.vertex()).collect();
    let top: Vec<u32> = (0..cols).map(|_| b.vertex()).collect();
    let mut anchor = None;
    for i in 0..cols {
        let rung = b.edge(bottom[i], top[i], label);
        if anchor.is_none() {
            anchor = Some(rung);
        }
    }
    for i in 0..cols - 1 {
        b.edge(bottom[i], bottom[i + 1], label);
        b.edge(top[i], top[i + 1], label);
        if i % 3 == 2 {
            b.edge(bottom[i], top[i + 1], label);
        } else {
            b.edge(top[i], bottom[i + 1], label);
        }
    }
    let slots = (0..s)
        .map(|t| (top[3 * t + 1], top[3 * t + 2]))
        .collect();
    Train {
        label,
        slots,
        next_slot: 0,
        anchor: anchor.unwrap(),
        end: (bottom[cols - 1], top[cols - 1]),
    }
}

/// Glues gadget edge `(g1, g2)` to the train through one braced square.
/// `g1` gains one edge (degree at most 4 before), `g2` gains two (at most 3).
fn link(b: &mut Builder, train: &mut Train, g1: u32, g2: u32) {
    assert!(b.degree[g1 as usize] <= 4, "link endpoint {g1} too loaded");
    assert!(b.degree[g2 as usize] <= 3, "link endpoint {g2} too loaded");
    let (p, q) = train.slots[train.next_slot];
    train.next_slot += 1;
    b.edge(q, g1, train.label);
    b.edge(p, g2, train.label);
    b.edge(q, g2, train.label);
}

pub fn build_reduction(f: &CnfFormula) -> ReductionArtifact {
    let n = f.variable_count;
    let k = f.clauses.len();
    let mut b = Builder::new();

    // attachment demand per train
    let mut demand: BTreeMap<Label, usize> = BTreeMap::new();
    demand.insert(Label::T, 2 * n as usize + 4 * k);
    demand.insert(Label::F, n as usize);
    for i in 1..=n {
        demand.insert(Label::Pos(i), 2);
        demand.insert(Label::Neg(i), 2);
    }
    for clause in &f.clauses {
        for lit in clause {
            let label = label_of(*lit);
            *demand.entry(label).or_insert(0) += 1;
        }
    }

    let mut trains: BTreeMap<Label, Train> = BTreeMap::new();
    let mut order: Vec<Label> = vec![Label::T, Label::F];
    for i in 1..=n {
        order.push(Label::Pos(i));
        order.push(Label::Neg(i));
    }
    for label in order {
        let t = build_train(&mut b, label, demand[&label]);
        trains.insert(label, t);
    }

    let mut registry = GadgetRegistry {
        squares_per_slot: SQUARES_PER_SLOT,
        ..Default::default()
    };

    for i in 1..=n {
        let a_cycle = build_variable_gadget_a(&mut b, &mut trains, i);
        let b_cycle = build_variable_gadget_b(&mut b, &mut trains, i);
        registry.variable_cycles.push((a_cycle, b_cycle));
    }
    for clause in &f.clauses {
        let cyc = build_clause_gadget(&mut b, &mut trains, clause);
        registry.clause_cycles.push(cyc);
    }

    for t in trains.values() {
        assert_eq!(t.next_slot, t.slots.len(), "unused train slots for {:?}", t.label);
    }

    let extension_end = trains[&Label::T].end;
    let anchors = trains
        .iter()
        .map(|(label, t)| (*label, t.anchor))
        .collect();
    let graph = Graph::from_edges(b.degree.len(), &b.edges).expect("construction stays simple");
    ReductionArtifact {
        graph,
        formula: f.clone(),
        labels: b.labels,
        anchors,
        registry,
        extension_end,
    }
}

fn label_of(lit: Lit) -> Label {
    if lit.negated {
        Label::Neg(lit.var)
    } else {
        Label::Pos(lit.var)
    }
}

/// 7-cycle (x, x, x, t, !x, !x, !x), each arc braced into its train.
fn build_variable_gadget_a(
    b: &mut Builder,
    trains: &mut BTreeMap<Label, Train>,
    var: u32,
) -> Vec<u32> {
    let x = Label::Pos(var);
    let y = Label::Neg(var);
    let c1 = b.vertex();
    let c2 = b.vertex();
    let c3 = b.vertex();
    let c4 = b.vertex();
    let c5 = b.vertex();
    let c6 = b.vertex();
    let hub = b.vertex();
    let l2a = b.vertex();
    let l2b = b.vertex();
    let l1a = b.vertex();
    let l1b = b.vertex();
    let r1a = b.vertex();
    let r1b = b.vertex();
    let r2a = b.vertex();
    let r2b = b.vertex();
    let t1a = b.vertex();
    let t1b = b.vertex();
    let t2a = b.vertex();
    let t2b = b.vertex();

    // positive side
    let e_hub_c1 = b.edge(hub, c1, x);
    let e_c1_c2 = b.edge(c1, c2, x);
    let e_c2_c3 = b.edge(c2, c3, x);
    b.edge(l2a, c1, x);
    b.edge(l2b, c2, x);
    b.edge(l2a, l2b, x);
    b.edge(l2a, c2, x); // diagonal
    b.edge(l1a, l2a, x);
    b.edge(l1b, l2b, x);
    b.edge(l1a, l1b, x);
    b.edge(l1a, l2b, x); // diagonal
    b.edge(l2b, c3, x);
    b.edge(l2a, hub, x);

    // top: a braced ladder carrying the t color
    let e_c3_c4 = b.edge(c3, c4, Label::T);
    b.edge(c3, t1a, Label::T);
    b.edge(c4, t1b, Label::T);
    b.edge(t1a, t1b, Label::T);
    b.edge(c3, t1b, Label::T); // diagonal
    b.edge(t1a, t2a, Label::T);
    b.edge(t1b, t2b, Label::T);
    b.edge(t2a, t2b, Label::T);
    b.edge(t1a, t2b, Label::T); // diagonal

    // negative side (mirror)
    let e_c4_c5 = b.edge(c4, c5, y);
    let e_c5_c6 = b.edge(c5, c6, y);
    let e_c6_hub = b.edge(c6, hub, y);
    b.edge(r1a, c6, y);
    b.edge(r1b, c5, y);
    b.edge(r1a, r1b, y);
    b.edge(c5, r1a, y); // diagonal
    b.edge(r1a, r2a, y);
    b.edge(r1b, r2b, y);
    b.edge(r2a, r2b, y);
    b.edge(r1b, r2a, y); // diagonal
    b.edge(r1b, c4, y);
    b.edge(r1a, hub, y);

    link(b, trains.get_mut(&x).unwrap(), l1a, l1b);
    link(b, trains.get_mut(&y).unwrap(), r2a, r2b);
    link(b, trains.get_mut(&Label::T).unwrap(), t2b, t2a);

    vec![e_hub_c1, e_c1_c2, e_c2_c3, e_c3_c4, e_c4_c5, e_c5_c6, e_c6_hub]
}

/// 4-cycle (x, t, !x, f), each side braced into its train.
fn build_variable_gadget_b(
    b: &mut Builder,
    trains: &mut BTreeMap<Label, Train>,
    var: u32,
) -> Vec<u32> {
    let x = Label::Pos(var);
    let y = Label::Neg(var);
    let p = b.vertex();
    let q = b.vertex();
    let r = b.vertex();
    let s = b.vertex();

    let e_pq = b.edge(p, q, x);
    let e_qr = b.edge(q, r, Label::T);
    let e_rs = b.edge(r, s, y);
    let e_sp = b.edge(s, p, Label::F);

    // each arm is a two-square braced ladder whose inner diagonal forms a
    // triangle with the cycle edge
    let arm = |b: &mut Builder, label: Label, a1: u32, a2: u32| {
        let m1 = b.vertex();
        let m2 = b.vertex();
        b.edge(a1, m1, label);
        b.edge(a2, m2, label);
        b.edge(m1, m2, label);
        b.edge(m1, a2, label); // triangle {a1-m1, m1-a2, a1-a2}
        let o1 = b.vertex();
        let o2 = b.vertex();
        b.edge(m1, o1, label);
        b.edge(m2, o2, label);
        b.edge(o1, o2, label);
        b.edge(o1, m2, label);
        (o1, o2)
    };

    let (xo1, xo2) = arm(b, x, p, q);
    let (to1, to2) = arm(b, Label::T, q, r);
    let (yo1, yo2) = arm(b, y, r, s);
    let (fo1, fo2) = arm(b, Label::F, s, p);

    link(b, trains.get_mut(&x).unwrap(), xo1, xo2);
    link(b, trains.get_mut(&Label::T).unwrap(), to1, to2);
    link(b, trains.get_mut(&y).unwrap(), yo1, yo2);
    link(b, trains.get_mut(&Label::F).unwrap(), fo1, fo2);

    vec![e_pq, e_qr, e_rs, e_sp]
}

/// 7-cycle (t, l1, l1, l2, l2, l3, l3); literal arcs are tied to their
/// trains through 3-prisms, the `t` arc directly through a braced square.
fn build_clause_gadget(
    b: &mut Builder,
    trains: &mut BTreeMap<Label, Train>,
    clause: &[Lit; 3],
) -> Vec<u32> {
    let cl = b.vertex();
    let ct = b.vertex();
    let cr = b.vertex();
    let cb = b.vertex();

    // t part: braced square tied to the cycle edge cb-cl
    let e_t = b.edge(cb, cl, Label::T);
    let q1 = b.vertex();
    let q2 = b.vertex();
    let q3 = b.vertex();
    let q4 = b.vertex();
    b.edge(q1, q3, Label::T);
    b.edge(q2, q4, Label::T);
    b.edge(q1, q2, Label::T);
    b.edge(q3, q4, Label::T);
    b.edge(q1, q4, Label::T); // diagonal
    b.edge(cb, q3, Label::T);
    b.edge(cl, q4, Label::T);
    b.edge(cl, q3, Label::T);
    link(b, trains.get_mut(&Label::T).unwrap(), q1, q2);

    let mut cycle = vec![e_t];
    let corners = [(cl, ct), (ct, cr), (cr, cb)];
    for (j, lit) in clause.iter().enumerate() {
        let label = label_of(*lit);
        let (cin, cout) = corners[j];

        let w = b.vertex();
        let f1 = b.vertex();
        let f2 = b.vertex();
        let s1 = b.vertex();
        let s2 = b.vertex();
        let m1 = b.vertex();
        let t2a = b.vertex();
        let t2b = b.vertex();
        let m2 = b.vertex();
        let tt1 = b.vertex();
        let tt2 = b.vertex();
        let xa = b.vertex();
        let xb = b.vertex();

        // fan around the two cycle edges
        let e_in = b.edge(cin, w, label);
        let e_out = b.edge(w, cout, label);
        b.edge(cin, f1, label);
        b.edge(w, f1, label);
        b.edge(f1, f2, label);
        b.edge(w, f2, label);
        b.edge(cout, f2, label);
        // square toward the prism
        b.edge(f1, s1, label);
        b.edge(f2, s1, label); // diagonal
        b.edge(f2, s2, label);
        b.edge(s1, s2, label);
        // prism triangle on the gadget side
        b.edge(s1, m1, label);
        b.edge(s2, m1, label);
        // prism triangle on the train side
        b.edge(t2a, t2b, label);
        b.edge(t2a, m2, label);
        b.edge(t2b, m2, label);
        // prism rails; these stay singleton classes except the middle one
        b.edge(s1, t2a, Label::T);
        b.edge(s2, t2b, Label::T);
        b.edge(m1, m2, Label::T);
        // braced square tying the middle rail to the t train
        b.edge(tt1, tt2, Label::T);
        b.edge(m1, tt1, Label::T);
        b.edge(m2, tt2, Label::T);
        b.edge(m1, tt2, Label::T); // diagonal
        // braced square tying the train-side triangle to the literal train
        b.edge(xa, xb, label);
        b.edge(t2a, xa, label);
        b.edge(t2b, xb, label);
        b.edge(t2a, xb, label); // diagonal

        link(b, trains.get_mut(&label).unwrap(), xb, xa);
        link(b, trains.get_mut(&Label::T).unwrap(), tt2, tt1);

        cycle.push(e_in);
        cycle.push(e_out);
    }
    cycle
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityError {
    EpsilonOutOfRange,
}

impl fmt::Display for DensityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "epsilon must satisfy 0 < eps < 1/2")
    }
}

impl Error for DensityError {}

/// Splices `k = ceil(|V| (1-2e)/(4e))` two-vertex, four-edge units into the
/// `t` train's ladder so that `|E| <= (2+e)|V|`. NAC-colorings are in
/// bijection with the input artifact's, since only one triangle-connected
/// component grows.
pub fn extend_for_density(
    r: &ReductionArtifact,
    eps_num: u64,
    eps_den: u64,
) -> Result<ReductionArtifact, DensityError> {
    if eps_num == 0 || eps_den == 0 || 2 * eps_num >= eps_den {
        return Err(DensityError::EpsilonOutOfRange);
    }
    let v0 = r.graph.vertex_count() as u128;
    let num = eps_num as u128;
    let den = eps_den as u128;
    // k = ceil(V * (den - 2 num) / (4 num))
    let k = (v0 * (den - 2 * num)).div_ceil(4 * num) as usize;

    let mut edges: Vec<(u32, u32)> = r.graph.edges().to_vec();
    let mut labels = r.labels.clone();
    let mut next_vertex = r.graph.vertex_count() as u32;
    let (mut a, mut bv) = r.extension_end;
    for _ in 0..k {
        let u = next_vertex;
        let v = next_vertex + 1;
        next_vertex += 2;
        for pair in [(a, u), (bv, v), (u, v), (a, v)] {
            edges.push((pair.0.min(pair.1), pair.0.max(pair.1)));
            labels.push(Label::T);
        }
        a = u;
        bv = v;
    }
    let graph = Graph::from_edges(next_vertex as usize, &edges).expect("extension stays simple");
    Ok(ReductionArtifact {
        graph,
        formula: r.formula.clone(),
        labels,
        anchors: r.anchors.clone(),
        registry: r.registry.clone(),
        extension_end: (a, bv),
    })
}

/// Exact density check `|E| <= (2 + num/den) |V|` in integers.
pub fn density_satisfied(edge_count: usize, vertex_count: usize, num: u64, den: u64) -> bool {
    (edge_count as u128) * (den as u128)
        <= (2 * den as u128 + num as u128) * (vertex_count as u128)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeError {
    NotAPartition,
    LabelBichromatic(Label),
    FalseTrainMatchesTrue,
    LiteralPairSameColor(u32),
    AssignmentDoesNotSatisfy,
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::NotAPartition => write!(f, "coloring does not partition the edges"),
            DecodeError::LabelBichromatic(l) => write!(f, "edges labelled {l} are bichromatic"),
            DecodeError::FalseTrainMatchesTrue => write!(f, "f train has the t train's color"),
            DecodeError::LiteralPairSameColor(v) => {
                write!(f, "trains x{v} and ~x{v} share a color")
            }
            DecodeError::AssignmentDoesNotSatisfy => {
                write!(f, "decoded assignment fails the formula")
            }
        }
    }
}

impl Error for DecodeError {}

/// Reads a truth assignment off a NAC-coloring of the gadget graph:
/// normalize so the `t` train is blue, then variable `i` is true iff the
/// `x_i` train is blue. Structural violations indicate a search bug.
pub fn decode_assignment(r: &ReductionArtifact, c: &NacColoring) -> Result<Vec<bool>, DecodeError> {
    let m = r.graph.edge_count() as u32;
    if c.red.intersects(&c.blue) || c.red.count() + c.blue.count() != m {
        return Err(DecodeError::NotAPartition);
    }
    let t_anchor = r.anchors[&Label::T];
    let swapped = c.red.contains(t_anchor);
    let is_blue = |e: u32| {
        if swapped {
            c.red.contains(e)
        } else {
            c.blue.contains(e)
        }
    };
    // every label group must be monochromatic
    let mut label_color: BTreeMap<Label, bool> = BTreeMap::new();
    for (e, label) in r.labels.iter().enumerate() {
        let blue = is_blue(e as u32);
        match label_color.get(label) {
            None => {
                label_color.insert(*label, blue);
            }
            Some(&prev) if prev != blue => return Err(DecodeError::LabelBichromatic(*label)),
            _ => {}
        }
    }
    if is_blue(r.anchors[&Label::F]) {
        return Err(DecodeError::FalseTrainMatchesTrue);
    }
    let f = &r.formula;
    let mut assignment = Vec::with_capacity(f.variable_count as usize);
    for i in 1..=f.variable_count {
        let pos_blue = is_blue(r.anchors[&Label::Pos(i)]);
        let neg_blue = is_blue(r.anchors[&Label::Neg(i)]);
        if pos_blue == neg_blue {
            return Err(DecodeError::LiteralPairSameColor(i));
        }
        assignment.push(pos_blue);
    }
    if !f.evaluate(&assignment) {
        return Err(DecodeError::AssignmentDoesNotSatisfy);
    }
    Ok(assignment)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatLimitError {
    pub variables: u32,
}

impl fmt::Display for SatLimitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sat brute force limited to 20 variables, got {}", self.variables)
    }
}

impl Error for SatLimitError {}

/// Tries all assignments; formulas up to 20 variables.
pub fn sat_brute_force(f: &CnfFormula) -> Result<bool, SatLimitError> {
    let n = f.variable_count;
    if n > 20 {
        return Err(SatLimitError { variables: n });
    }
    let mut assignment = vec![false; n as usize];
    for bits in 0..1u64 << n {
        for (i, slot) in assignment.iter_mut().enumerate() {
            *slot = bits >> i & 1 == 1;
        }
        if f.evaluate(&assignment) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{enumerate, SearchConfig};

    fn f1() -> CnfFormula {
        CnfFormula::new(1, vec![[Lit::pos(1), Lit::pos(1), Lit::pos(1)]]).unwrap()
    }

    fn f1_unsat() -> CnfFormula {
        CnfFormula::new(
            1,
            vec![
                [Lit::pos(1), Lit::pos(1), Lit::pos(1)],
                [Lit::neg(1), Lit::neg(1), Lit::neg(1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn sat_brute_force_basics() {
        assert_eq!(sat_brute_force(&f1()), Ok(true));
        assert_eq!(sat_brute_force(&f1_unsat()), Ok(false));
        let f3 = CnfFormula::new(3, vec![[Lit::pos(1), Lit::pos(2), Lit::pos(3)]]).unwrap();
        assert_eq!(sat_brute_force(&f3), Ok(true));
    }

    #[test]
    fn max_degree_is_exactly_five() {
        let art = build_reduction(&f1_unsat());
        let g = &art.graph;
        let max = (0..g.vertex_count() as u32).map(|v| g.degree(v)).max().unwrap();
        assert_eq!(max, 5);
    }

    #[test]
    fn registry_cycle_labels() {
        let art = build_reduction(&f1());
        let (a_cycle, b_cycle) = &art.registry.variable_cycles[0];
        let pat: Vec<Label> = a_cycle.iter().map(|&e| art.labels[e as usize]).collect();
        assert_eq!(
            pat,
            vec![
                Label::Pos(1),
                Label::Pos(1),
                Label::Pos(1),
                Label::T,
                Label::Neg(1),
                Label::Neg(1),
                Label::Neg(1)
            ]
        );
        let pat: Vec<Label> = b_cycle.iter().map(|&e| art.labels[e as usize]).collect();
        assert_eq!(pat, vec![Label::Pos(1), Label::T, Label::Neg(1), Label::F]);
        let cyc = &art.registry.clause_cycles[0];
        assert_eq!(cyc.len(), 7);
        assert_eq!(art.labels[cyc[0] as usize], Label::T);
    }

    #[test]
    fn satisfiable_formula_has_nac_and_decodes() {
        let f = f1();
        let art = build_reduction(&f);
        let cfg = SearchConfig::default();
        let mut stream = enumerate(&art.graph, &cfg);
        let coloring = stream.next().expect("satisfiable formula yields a coloring");
        let assignment = decode_assignment(&art, &coloring).unwrap();
        assert_eq!(assignment, vec![true]);
    }

    #[test]
    fn decode_normalizes_color_swap() {
        let f = f1();
        let art = build_reduction(&f);
        let cfg = SearchConfig::default();
        let coloring = enumerate(&art.graph, &cfg).next().unwrap();
        let swapped = crate::search::NacColoring {
            red: coloring.blue.clone(),
            blue: coloring.red.clone(),
        };
        assert_eq!(
            decode_assignment(&art, &coloring).unwrap(),
            decode_assignment(&art, &swapped).unwrap()
        );
    }

    #[test]
    fn density_extension_preserves_existence() {
        for (f, expect) in [(f1(), true), (f1_unsat(), false)] {
            let art = build_reduction(&f);
            let ext = extend_for_density(&art, 1, 4).unwrap();
            let cfg = SearchConfig::default();
            assert_eq!(crate::search::exists(&ext.graph, &cfg), expect);
            assert_eq!(crate::search::exists(&art.graph, &cfg), expect);
        }
    }

    #[test]
    fn class_count_scales_linearly() {
        // trains collapse into one class each; every clause leaves three
        // fan classes and six singleton prism rails
        for (f, n, k) in [(f1(), 1usize, 1usize), (f1_unsat(), 1, 2)] {
            let art = build_reduction(&f);
            let p = crate::mono::monochromatic_classes(&art.graph);
            assert_eq!(p.len(), 2 * n + 2 + 9 * k);
        }
    }

    #[test]
    fn sizes_scale_linearly() {
        for (f, n, k) in [(f1(), 1u32, 1usize), (f1_unsat(), 1, 2)] {
            let art = build_reduction(&f);
            let slots = 7 * n as usize + 7 * k;
            let expected_v = 6 * slots + 2 * (2 * n as usize + 2) + 39 * n as usize + 47 * k;
            let expected_e = 15 * slots + (2 * n as usize + 2) + 71 * n as usize + 90 * k;
            assert_eq!(art.graph.vertex_count(), expected_v);
            assert_eq!(art.graph.edge_count(), expected_e);
        }
    }

    #[test]
    fn nac_colorings_biject_with_satisfying_assignments() {
        let cases: Vec<CnfFormula> = vec![
            CnfFormula::new(1, vec![[Lit::pos(1); 3]]).unwrap(),
            CnfFormula::new(2, vec![[Lit::pos(1), Lit::neg(2), Lit::pos(2)]]).unwrap(),
            CnfFormula::new(
                2,
                vec![
                    [Lit::pos(1), Lit::pos(2), Lit::pos(2)],
                    [Lit::neg(1), Lit::pos(2), Lit::pos(2)],
                ],
            )
            .unwrap(),
            CnfFormula::new(3, vec![[Lit::pos(1), Lit::pos(2), Lit::pos(3)]]).unwrap(),
        ];
        for f in cases {
            let n = f.variable_count;
            let satisfying = (0..1u64 << n)
                .filter(|bits| {
                    let a: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                    f.evaluate(&a)
                })
                .count();
            let art = build_reduction(&f);
            let cfg = SearchConfig::default();
            let colorings: Vec<_> = enumerate(&art.graph, &cfg).collect();
            assert_eq!(colorings.len(), satisfying, "formula {f:?}");
            // distinct colorings decode to distinct assignments
            let decoded: std::collections::BTreeSet<Vec<bool>> = colorings
                .iter()
                .map(|c| decode_assignment(&art, c).unwrap())
                .collect();
            assert_eq!(decoded.len(), satisfying);
        }
    }

    #[test]
    fn density_extension_counts() {
        let art = build_reduction(&f1());
        let (v0, e0) = (art.graph.vertex_count(), art.graph.edge_count());
        let ext = extend_for_density(&art, 1, 4).unwrap();
        let k = (v0 as u128 * 2).div_ceil(4) as usize; // (1 - 2/4) / (4/4) = 1/2
        assert_eq!(ext.graph.vertex_count(), v0 + 2 * k);
        assert_eq!(ext.graph.edge_count(), e0 + 4 * k);
        assert!(density_satisfied(ext.graph.edge_count(), ext.graph.vertex_count(), 1, 4));
        assert!(extend_for_density(&art, 1, 2).is_err());
        assert!(extend_for_density(&art, 3, 4).is_err());
    }

    #[test]
    fn dimacs_parsing() {
        let f = parse_dimacs("c comment\np cnf 2 2\n1 -2 1 0\n2 2 2 0\n", false).unwrap();
        assert_eq!(f.variable_count, 2);
        assert_eq!(f.clauses.len(), 2);
        assert_eq!(f.clauses[0], [Lit::pos(1), Lit::neg(2), Lit::pos(1)]);

        assert!(matches!(
            parse_dimacs("p cnf 1 1\n1 0\n", false),
            Err(DimacsError::ClauseTooSmall { .. })
        ));
        let padded = parse_dimacs("p cnf 1 1\n1 0\n", true).unwrap();
        assert_eq!(padded.clauses[0], [Lit::pos(1); 3]);
        assert!(matches!(
            parse_dimacs("p cnf 1 1\n1 1 1 1 0\n", false),
            Err(DimacsError::ClauseTooLarge { .. })
        ));
        assert!(matches!(
            parse_dimacs("1 0\n", false),
            Err(DimacsError::MissingHeader)
        ));
    }
}
