//! 3SAT reductions to the consistency problem, with witness maps in both
//! directions and DIMACS CNF input.
//!
//! Undirected variant, `n` variables and `m` clauses (`2n + 2` vertices):
//! `y_i = 2i`, `ȳ_i = 2i + 1`, `z = 2n`, `z′ = 2n + 1`.
//!
//! Tree variant (`4n + 3` vertices): `y_i = 4i`, `ȳ_i = 4i + 1`,
//! `w_i = 4i + 2`, `w′_i = 4i + 3`, `z = 4n`, `z′ = 4n + 1`, `z″ = 4n + 2`.
//!
//! Variables are 0-based in code and 1-based in DIMACS and role labels.

use std::fmt;
use std::fmt::Write as _;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind};
use crate::observations::{Observation, TrainingSet};
use crate::system::ThresholdSystem;
use crate::text::{observations_to_text, parse_observations};

/// Largest variable count for truth-table search.
pub const TRUTH_TABLE_LIMIT: usize = 20;

/// A CNF formula; literal `+i` is variable `i`, `-i` its negation (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    /// Rejects empty clauses, out-of-range literals and clauses containing a
    /// literal together with its negation.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            validate_clause(num_vars, clause).map_err(|m| Error::invalid(format!("clause {}: {m}", j + 1)))?;
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }

    /// True iff `alpha` satisfies every clause.
    pub fn evaluate(&self, alpha: &[bool]) -> Result<bool> {
        self.check_assignment(alpha)?;
        Ok(self.clauses.iter().all(|c| c.iter().any(|&l| literal_true(l, alpha))))
    }

    fn check_assignment(&self, alpha: &[bool]) -> Result<()> {
        if alpha.len() != self.num_vars {
            return Err(Error::invalid(format!(
                "assignment has {} values for {} variables",
                alpha.len(),
                self.num_vars
            )));
        }
        Ok(())
    }

    fn check_width(&self) -> Result<()> {
        if self.clauses.is_empty() {
            return Err(Error::invalid("reduction needs at least one clause"));
        }
        if let Some(j) = self.clauses.iter().position(|c| c.len() > 3) {
            return Err(Error::invalid(format!("clause {} has more than 3 literals", j + 1)));
        }
        Ok(())
    }
}

fn literal_true(l: i64, alpha: &[bool]) -> bool {
    alpha[l.unsigned_abs() as usize - 1] == (l > 0)
}

fn validate_clause(num_vars: usize, clause: &[i64]) -> std::result::Result<(), String> {
    if clause.is_empty() {
        return Err("empty clause".into());
    }
    for &l in clause {
        if l == 0 || l.unsigned_abs() as usize > num_vars {
            return Err(format!("literal out of range: {l}"));
        }
        if clause.contains(&-l) {
            return Err(format!("tautological clause contains {} and {}", l.abs(), -l.abs()));
        }
    }
    Ok(())
}

/// Parses DIMACS CNF. Clauses may span lines and must end with `0`; a `%`
/// line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut current_line = 0;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(ln, "duplicate header"));
            }
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 4 || t[0] != "p" || t[1] != "cnf" {
                return Err(Error::parse(ln, "expected header 'p cnf <vars> <clauses>'"));
            }
            let vars = t[2]
                .parse()
                .map_err(|_| Error::parse(ln, format!("invalid variable count '{}'", t[2])))?;
            let count = t[3]
                .parse()
                .map_err(|_| Error::parse(ln, format!("invalid clause count '{}'", t[3])))?;
            header = Some((vars, count, ln));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(Error::parse(ln, "clause before header"));
        };
        for token in line.split_whitespace() {
            let l: i64 = token
                .parse()
                .map_err(|_| Error::parse(ln, format!("invalid literal '{token}'")))?;
            if l == 0 {
                if current.is_empty() {
                    return Err(Error::parse(ln, "empty clause"));
                }
                let clause = std::mem::take(&mut current);
                validate_clause(vars, &clause).map_err(|m| Error::parse(ln, m))?;
                clauses.push(clause);
            } else {
                if l.unsigned_abs() as usize > vars {
                    return Err(Error::parse(ln, format!("literal out of range: {l}")));
                }
                if current.is_empty() {
                    current_line = ln;
                }
                current.push(l);
            }
        }
    }
    let (vars, count, hl) = header.ok_or_else(|| Error::parse(1, "missing header 'p cnf <vars> <clauses>'"))?;
    if !current.is_empty() {
        return Err(Error::parse(current_line, "clause not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(Error::parse(
            hl,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses)
}

pub fn to_dimacs(f: &CnfFormula) -> String {
    let mut s = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            let _ = write!(s, "{l} ");
        }
        s.push_str("0\n");
    }
    s
}

/// Every satisfying assignment, in binary counting order with variable 1 as
/// the lowest bit.
pub fn satisfying_assignments(f: &CnfFormula) -> Result<Vec<Vec<bool>>> {
    if f.num_vars > TRUTH_TABLE_LIMIT {
        return Err(Error::UnsupportedInstance(format!(
            "truth-table search is limited to {TRUTH_TABLE_LIMIT} variables"
        )));
    }
    let mut out = Vec::new();
    for idx in 0u64..1 << f.num_vars {
        let alpha: Vec<bool> = (0..f.num_vars).map(|i| idx >> i & 1 == 1).collect();
        if f.evaluate(&alpha)? {
            out.push(alpha);
        }
    }
    Ok(out)
}

/// First satisfying assignment in truth-table order, if any.
pub fn find_satisfying_assignment(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    Ok(satisfying_assignments(f)?.into_iter().next())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionVariant {
    Undirected,
    Tree,
}

impl fmt::Display for ReductionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionVariant::Undirected => "undirected",
            ReductionVariant::Tree => "tree",
        })
    }
}

impl std::str::FromStr for ReductionVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "undirected" => Ok(ReductionVariant::Undirected),
            "tree" => Ok(ReductionVariant::Tree),
            other => Err(Error::invalid(format!("unknown reduction variant '{other}'"))),
        }
    }
}

/// Vertex numbering of a reduction.
#[derive(Clone, Copy, Debug)]
struct Layout {
    variant: ReductionVariant,
    n: usize,
}

impl Layout {
    fn stride(self) -> usize {
        match self.variant {
            ReductionVariant::Undirected => 2,
            ReductionVariant::Tree => 4,
        }
    }
    fn y(self, i: usize) -> usize {
        self.stride() * i
    }
    fn ybar(self, i: usize) -> usize {
        self.stride() * i + 1
    }
    fn w(self, i: usize) -> usize {
        4 * i + 2
    }
    fn w2(self, i: usize) -> usize {
        4 * i + 3
    }
    fn z(self) -> usize {
        self.stride() * self.n
    }
    fn z1(self) -> usize {
        self.z() + 1
    }
    fn z2(self) -> usize {
        self.z() + 2
    }
    fn vertices(self) -> usize {
        match self.variant {
            ReductionVariant::Undirected => 2 * self.n + 2,
            ReductionVariant::Tree => 4 * self.n + 3,
        }
    }
    fn literal(self, l: i64) -> usize {
        let i = l.unsigned_abs() as usize - 1;
        if l > 0 {
            self.y(i)
        } else {
            self.ybar(i)
        }
    }
    fn roles(self) -> Vec<String> {
        let mut roles = vec![String::new(); self.vertices()];
        for i in 0..self.n {
            roles[self.y(i)] = format!("y_{}", i + 1);
            roles[self.ybar(i)] = format!("ybar_{}", i + 1);
            if self.variant == ReductionVariant::Tree {
                roles[self.w(i)] = format!("w_{}", i + 1);
                roles[self.w2(i)] = format!("w'_{}", i + 1);
            }
        }
        roles[self.z()] = "z".into();
        roles[self.z1()] = "z'".into();
        if self.variant == ReductionVariant::Tree {
            roles[self.z2()] = "z''".into();
        }
        roles
    }
    fn config(self, active: &[usize]) -> Configuration {
        Configuration::from_active(self.vertices(), active).expect("layout vertices are in range")
    }
}

/// Vertex roles and the transition set of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub variant: ReductionVariant,
    pub num_vars: usize,
    /// Role label per vertex.
    pub roles: Vec<String>,
    pub obs: TrainingSet,
}

impl ReductionOutput {
    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    /// Observation text with a `# role <v> <label>` block after the header.
    pub fn to_text(&self) -> String {
        let body = observations_to_text(&self.obs);
        let (header, rest) = body.split_once('\n').unwrap_or((&body, ""));
        let mut s = format!("{header}\n# reduction {} {}\n", self.variant, self.num_vars);
        for (v, r) in self.roles.iter().enumerate() {
            let _ = writeln!(s, "# role {v} {r}");
        }
        s.push_str(rest);
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let obs = parse_observations(text)?;
        let mut meta = None;
        let mut roles = vec![None; obs.n()];
        for (ln, line) in text.lines().enumerate() {
            let t: Vec<&str> = line.trim().trim_start_matches('#').split_whitespace().collect();
            if !line.trim_start().starts_with('#') {
                continue;
            }
            match t.first() {
                Some(&"reduction") if t.len() == 3 => {
                    let variant: ReductionVariant =
                        t[1].parse().map_err(|e: Error| Error::parse(ln + 1, e.to_string()))?;
                    let n: usize = t[2]
                        .parse()
                        .map_err(|_| Error::parse(ln + 1, "invalid variable count"))?;
                    meta = Some((variant, n));
                }
                Some(&"role") if t.len() == 3 => {
                    let v: usize = t[1].parse().map_err(|_| Error::parse(ln + 1, "invalid vertex"))?;
                    let slot = roles
                        .get_mut(v)
                        .ok_or_else(|| Error::parse(ln + 1, format!("vertex {v} out of range")))?;
                    *slot = Some(t[2].to_string());
                }
                _ => {}
            }
        }
        let (variant, num_vars) = meta.ok_or_else(|| Error::parse(1, "missing '# reduction <variant> <vars>' line"))?;
        let roles = roles
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| Error::invalid(format!("missing role for vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;
        let expected = Layout { variant, n: num_vars }.roles();
        if roles != expected {
            return Err(Error::invalid("role labels do not match the reduction layout"));
        }
        Ok(ReductionOutput {
            variant,
            num_vars,
            roles,
            obs,
        })
    }
}

/// The undirected reduction: `O¹` (2 pairs), `O²` (one per variable), `O³`
/// (one per clause).
pub fn reduce_3sat_undirected(f: &CnfFormula) -> Result<ReductionOutput> {
    f.check_width()?;
    let lay = Layout {
        variant: ReductionVariant::Undirected,
        n: f.num_vars,
    };
    let mut pairs = vec![
        Observation::new(lay.config(&[lay.z()]), lay.config(&[])),
        Observation::new(lay.config(&[lay.z(), lay.z1()]), lay.config(&[lay.z()])),
    ];
    for i in 0..f.num_vars {
        pairs.push(Observation::new(lay.config(&[lay.y(i), lay.ybar(i)]), lay.config(&[])));
    }
    for c in &f.clauses {
        let mut active: Vec<usize> = c.iter().map(|&l| lay.literal(l)).collect();
        active.push(lay.z());
        pairs.push(Observation::new(lay.config(&active), lay.config(&[lay.z()])));
    }
    finish(lay, pairs)
}

/// The tree reduction: one non-fixed-point pair `z → ∅` and fixed points
/// `O²` (2), `O³` (2 per variable), `O⁴` (2 per variable), `O⁵` (one per
/// clause).
pub fn reduce_3sat_tree(f: &CnfFormula) -> Result<ReductionOutput> {
    f.check_width()?;
    let lay = Layout {
        variant: ReductionVariant::Tree,
        n: f.num_vars,
    };
    let fixed = |active: &[usize]| {
        let c = lay.config(active);
        Observation::new(c.clone(), c)
    };
    let mut pairs = vec![
        Observation::new(lay.config(&[lay.z()]), lay.config(&[])),
        fixed(&[lay.z(), lay.z1()]),
        fixed(&[lay.z1(), lay.z2()]),
    ];
    for i in 0..f.num_vars {
        pairs.push(fixed(&[lay.w(i), lay.w2(i)]));
        pairs.push(fixed(&[lay.w(i), lay.w2(i), lay.z1(), lay.z2()]));
    }
    for i in 0..f.num_vars {
        pairs.push(fixed(&[lay.w(i), lay.y(i), lay.ybar(i)]));
        pairs.push(fixed(&[lay.w(i), lay.y(i), lay.ybar(i), lay.z()]));
    }
    for c in &f.clauses {
        let mut active = vec![lay.z()];
        for &l in c {
            active.push(lay.literal(l));
            active.push(lay.w(l.unsigned_abs() as usize - 1));
        }
        active.sort_unstable();
        active.dedup();
        pairs.push(fixed(&active));
    }
    finish(lay, pairs)
}

fn finish(lay: Layout, pairs: Vec<Observation>) -> Result<ReductionOutput> {
    Ok(ReductionOutput {
        variant: lay.variant,
        num_vars: lay.n,
        roles: lay.roles(),
        obs: TrainingSet::new(lay.vertices(), pairs)?,
    })
}

pub fn reduce_3sat(f: &CnfFormula, variant: ReductionVariant) -> Result<ReductionOutput> {
    match variant {
        ReductionVariant::Undirected => reduce_3sat_undirected(f),
        ReductionVariant::Tree => reduce_3sat_tree(f),
    }
}

/// The system `S(α)`.
///
/// Undirected: edges `z–y_i` when `α_i`, else `z–ȳ_i`, plus `z–z′`;
/// `τ_z = 2` and every other vertex never fires (`τ = |N⁺| + 1`).
///
/// Tree: edges `z–z′`, `z′–z″`, `w_i–w′_i`, `w_i–y_i`, `w_i–ȳ_i`, plus `y_i–z`
/// when `α_i`, else `ȳ_i–z`; every threshold is 2.
pub fn witness_from_assignment(f: &CnfFormula, alpha: &[bool], variant: ReductionVariant) -> Result<ThresholdSystem> {
    f.check_assignment(alpha)?;
    let lay = Layout { variant, n: f.num_vars };
    let chosen = |i: usize| if alpha[i] { lay.y(i) } else { lay.ybar(i) };
    let mut edges = vec![(lay.z(), lay.z1())];
    match variant {
        ReductionVariant::Undirected => {
            edges.extend((0..lay.n).map(|i| (lay.z(), chosen(i))));
            let g = Graph::new(lay.vertices(), GraphKind::Undirected, edges)?;
            let taus = (0..lay.vertices())
                .map(|v| {
                    if v == lay.z() {
                        2
                    } else {
                        g.closed_neighborhood(v).len() as i64 + 1
                    }
                })
                .collect();
            ThresholdSystem::new(g, taus)
        }
        ReductionVariant::Tree => {
            edges.push((lay.z1(), lay.z2()));
            for i in 0..lay.n {
                edges.push((lay.w(i), lay.w2(i)));
                edges.push((lay.w(i), lay.y(i)));
                edges.push((lay.w(i), lay.ybar(i)));
                edges.push((chosen(i), lay.z()));
            }
            let g = Graph::new(lay.vertices(), GraphKind::Undirected, edges)?;
            ThresholdSystem::new(g, vec![2; lay.vertices()])
        }
    }
}

/// `α(S)`: variable `i` is true iff `S` has the edge `z–y_i`.
pub fn assignment_from_system(
    f: &CnfFormula,
    system: &ThresholdSystem,
    variant: ReductionVariant,
) -> Result<Vec<bool>> {
    let lay = Layout { variant, n: f.num_vars };
    if system.n() != lay.vertices() {
        return Err(Error::LengthMismatch {
            expected: lay.vertices(),
            actual: system.n(),
        });
    }
    Ok((0..lay.n).map(|i| system.graph().has_edge(lay.z(), lay.y(i))).collect())
}
