//! Finite quandles given by operation tables.
//!
//! Elements are the indices `0..size`; `table[x][y] = x * y`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A violation of one of the quandle axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxiomFailure {
    /// `x * x != x`.
    Idempotence { x: usize },
    /// Right translation by `y` is not a bijection: `x1 * y == x2 * y`.
    RightInvertibility { y: usize, x1: usize, x2: usize },
    /// `(x * y) * z != (x * z) * (y * z)`.
    Distributivity { x: usize, y: usize, z: usize },
}

impl AxiomFailure {
    /// Axiom number: 1 idempotence, 2 right invertibility, 3 distributivity.
    pub fn axiom(&self) -> u8 {
        match self {
            AxiomFailure::Idempotence { .. } => 1,
            AxiomFailure::RightInvertibility { .. } => 2,
            AxiomFailure::Distributivity { .. } => 3,
        }
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomFailure::Idempotence { x } => write!(f, "axiom=1 x={x}"),
            AxiomFailure::RightInvertibility { y, x1, x2 } => {
                write!(f, "axiom=2 y={y} x1={x1} x2={x2}")
            }
            AxiomFailure::Distributivity { x, y, z } => write!(f, "axiom=3 x={x} y={y} z={z}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn validate_shape(rows: &[Vec<usize>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Malformed("table has no rows".into()));
    }
    for (x, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "row {x} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange {
                    row: x,
                    col: y,
                    value: v,
                    size: n,
                });
            }
        }
    }
    Ok(n)
}

/// Exhaustively checks the three axioms on a candidate table and lists every
/// violation.
pub fn check_axioms(rows: &[Vec<usize>]) -> Result<AxiomReport> {
    let n = validate_shape(rows)?;
    let mut failures = Vec::new();
    for (x, row) in rows.iter().enumerate() {
        if row[x] != x {
            failures.push(AxiomFailure::Idempotence { x });
        }
    }
    for y in 0..n {
        let mut seen: Vec<Option<usize>> = vec![None; n];
        for (x, row) in rows.iter().enumerate() {
            let v = row[y];
            match seen[v] {
                Some(x1) => failures.push(AxiomFailure::RightInvertibility { y, x1, x2: x }),
                None => seen[v] = Some(x),
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = rows[x][y];
            for z in 0..n {
                if rows[xy][z] != rows[rows[x][z]][rows[y][z]] {
                    failures.push(AxiomFailure::Distributivity { x, y, z });
                }
            }
        }
    }
    Ok(AxiomReport { failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    size: usize,
    table: Vec<usize>,
}

impl FiniteQuandle {
    /// Builds a quandle from its rows, rejecting tables that violate an axiom.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let report = check_axioms(&rows)?;
        if let Some(first) = report.failures.first() {
            return Err(Error::Malformed(format!("not a quandle ({first})")));
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        let size = rows.len();
        FiniteQuandle {
            size,
            table: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `x * y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// The sub-table on `subset` (which must be closed), with elements
    /// renumbered in increasing order.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> Result<FiniteQuandle> {
        let carrier: Vec<usize> = subset.iter().copied().collect();
        let index = |v: usize| carrier.binary_search(&v).ok();
        let mut rows = Vec::with_capacity(carrier.len());
        for &x in &carrier {
            let mut row = Vec::with_capacity(carrier.len());
            for &y in &carrier {
                let v = self.op(x, y);
                row.push(index(v).ok_or_else(|| {
                    Error::Precondition(format!("subset is not closed: {x} * {y} = {v}"))
                })?);
            }
            rows.push(row);
        }
        FiniteQuandle::new(rows)
    }
}

pub fn trivial_quandle(k: usize) -> Result<FiniteQuandle> {
    if k == 0 {
        return Err(Error::Precondition(
            "a quandle needs at least one element".into(),
        ));
    }
    Ok(FiniteQuandle::from_rows_unchecked(
        (0..k).map(|x| vec![x; k]).collect(),
    ))
}

/// `inv[x][y]` is the unique `z` with `z * y = x`.
pub fn inverse_table(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = q.size();
    let mut inv = vec![vec![0; n]; n];
    for y in 0..n {
        for z in 0..n {
            inv[q.op(z, y)][y] = z;
        }
    }
    inv
}

/// Smallest subset containing `seed` and closed under `*` and `*^-1`.
pub fn subquandle_closure(q: &FiniteQuandle, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let inv = inverse_table(q);
    let mut closed: BTreeSet<usize> = seed.iter().copied().filter(|&x| x < q.size()).collect();
    loop {
        let members: Vec<usize> = closed.iter().copied().collect();
        let mut grew = false;
        for &x in &members {
            for &y in &members {
                grew |= closed.insert(q.op(x, y));
                grew |= closed.insert(inv[x][y]);
            }
        }
        if !grew {
            return closed;
        }
    }
}

/// A finite group by multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    size: usize,
    product: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroupTable {
    /// Validates associativity, the identity and the existence of inverses.
    pub fn new(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = validate_shape(&rows)?;
        if identity >= n {
            return Err(Error::Malformed(format!(
                "identity index {identity} out of range for size {n}"
            )));
        }
        for x in 0..n {
            if rows[identity][x] != x || rows[x][identity] != x {
                return Err(Error::Malformed(format!(
                    "{identity} is not a two-sided identity (fails at {x})"
                )));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| rows[x][y] == identity && rows[y][x] == identity)
                .ok_or_else(|| Error::Malformed(format!("element {x} has no inverse")))?;
            inverse[x] = y;
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if rows[rows[x][y]][z] != rows[x][rows[y][z]] {
                        return Err(Error::Malformed(format!(
                            "product is not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            size: n,
            product: rows.into_iter().flatten().collect(),
            inverse,
            identity,
        })
    }

    /// ℤ/k with `0` as identity.
    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("group order must be positive".into()));
        }
        let rows = (0..k)
            .map(|x| (0..k).map(|y| (x + y) % k).collect())
            .collect();
        FiniteGroupTable::new(rows, 0)
    }

    /// The symmetric group on `d` points. Elements are the permutations in
    /// lexicographic order of one-line notation; `x·y` applies `x` first.
    pub fn symmetric(d: usize) -> Result<(Self, Vec<Vec<usize>>)> {
        let perms = crate::perm::all_permutations(d);
        let rows = perms
            .iter()
            .map(|x| {
                perms
                    .iter()
                    .map(|y| {
                        let xy: Vec<usize> = x.iter().map(|&i| y[i]).collect();
                        perms.binary_search(&xy).expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        let identity = 0;
        Ok((FiniteGroupTable::new(rows, identity)?, perms))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x * self.size + y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `y⁻¹ x y`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.inv(y), self.mul(x, y))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.product
            .chunks(self.size)
            .map(<[usize]>::to_vec)
            .collect()
    }
}

/// `Conj(G)`: the group with `x * y = y⁻¹ x y`.
pub fn conj_quandle(g: &FiniteGroupTable) -> FiniteQuandle {
    let n = g.size();
    FiniteQuandle::from_rows_unchecked(
        (0..n)
            .map(|x| (0..n).map(|y| g.conj(x, y)).collect())
            .collect(),
    )
}

/// A Dehn quandle together with the group elements its indices stand for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DehnQuandle {
    pub quandle: FiniteQuandle,
    /// `carrier[i]` is the group element of quandle element `i`, ascending.
    pub carrier: Vec<usize>,
}

/// The set of all conjugates of `generators`, with conjugation as operation.
pub fn dehn_quandle_finite(g: &FiniteGroupTable, generators: &[usize]) -> Result<DehnQuandle> {
    if generators.is_empty() {
        return Err(Error::Precondition(
            "generating subset must be nonempty".into(),
        ));
    }
    if let Some(&x) = generators.iter().find(|&&x| x >= g.size()) {
        return Err(Error::Precondition(format!(
            "element {x} is not in the group"
        )));
    }
    let set: BTreeSet<usize> = generators
        .iter()
        .flat_map(|&x| (0..g.size()).map(move |h| (x, h)))
        .map(|(x, h)| g.conj(x, h))
        .collect();
    let carrier: Vec<usize> = set.into_iter().collect();
    let pos = |v: usize| {
        carrier
            .binary_search(&v)
            .expect("carrier closed under conjugation")
    };
    let rows = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos(g.conj(x, y))).collect())
        .collect();
    Ok(DehnQuandle {
        quandle: FiniteQuandle::from_rows_unchecked(rows),
        carrier,
    })
}

fn parse_rows(lines: &mut dyn Iterator<Item = (usize, &str)>, n: usize) -> Result<Vec<Vec<usize>>> {
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::Malformed(format!("expected {n} rows, found {r}")))?;
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    Error::Malformed(format!("line {}: bad entry {tok:?}", lineno + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "line {}: expected {n} entries, found {}",
                lineno + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn parse_size(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<usize> {
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::Malformed("empty input".into()))?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("line 1: bad size {:?}", first.trim())))?;
    if n == 0 {
        return Err(Error::Malformed("size must be positive".into()));
    }
    Ok(n)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
}

fn expect_end(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<()> {
    match lines.next() {
        Some((lineno, _)) => Err(Error::Malformed(format!(
            "line {}: unexpected trailing content",
            lineno + 1
        ))),
        None => Ok(()),
    }
}

/// Reads a candidate quandle table: the size on the first line, then one row
/// per line. Entries are not range-checked here; see [`check_axioms`].
pub fn parse_quandle_file(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = content_lines(text);
    let n = parse_size(&mut lines)?;
    let rows = parse_rows(&mut lines, n)?;
    expect_end(&mut lines)?;
    Ok(rows)
}

fn render_rows(out: &mut String, rows: &[Vec<usize>]) {
    use std::fmt::Write;
    writeln!(out, "{}", rows.len()).unwrap();
    for row in rows {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
}

pub fn render_quandle_file(q: &FiniteQuandle) -> String {
    let mut out = String::new();
    render_rows(&mut out, &q.rows());
    out
}

/// Reads a group file: size, product rows, then the identity index.
pub fn parse_group_file(text: &str) -> Result<FiniteGroupTable> {
    let mut lines = content_lines(text);
    let n = parse_size(&mut lines)?;
    let rows = parse_rows(&mut lines, n)?;
    let (lineno, id_line) = lines
        .next()
        .ok_or_else(|| Error::Malformed("missing identity line".into()))?;
    let identity: usize = id_line
        .trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("line {}: bad identity index", lineno + 1)))?;
    expect_end(&mut lines)?;
    FiniteGroupTable::new(rows, identity)
}

pub fn render_group_file(g: &FiniteGroupTable) -> String {
    let mut out = String::new();
    render_rows(&mut out, &g.rows());
    out.push_str(&format!("{}\n", g.identity()));
    out
}
