//! Quandle homomorphisms from a finitely presented source into a finite
//! quandle, by backtracking over generator images.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::quandle::{inverse_table, FiniteQuandle};
use crate::term::{Op, QuandleTerm};

/// Evaluates `t` in `q`, looking atoms up through `value`.
pub fn eval_term_in(
    t: &QuandleTerm,
    q: &FiniteQuandle,
    inv: &[Vec<usize>],
    value: &dyn Fn(&str) -> Option<usize>,
) -> Result<usize> {
    let get = |name: &str| value(name).ok_or_else(|| Error::UnassignedAtom(name.to_string()));
    let mut acc = get(&t.head)?;
    for (name, op) in &t.tail {
        let y = get(name)?;
        acc = match op {
            Op::Star => q.op(acc, y),
            Op::StarInv => inv[acc][y],
        };
    }
    Ok(acc)
}

/// Assignments `generators[i] ↦ images[i]` into `target` under which both
/// sides of every relation evaluate equally, in lexicographic order of the
/// image vectors, at most `limit` of them.
pub fn quandle_homs(
    generators: &[String],
    relations: &[(QuandleTerm, QuandleTerm)],
    target: &FiniteQuandle,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&str, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| (g.as_str(), i))
        .collect();
    // each relation is checked as soon as its last generator is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); generators.len()];
    for (r, (lhs, rhs)) in relations.iter().enumerate() {
        let mut last = 0;
        for atom in lhs.atoms().chain(rhs.atoms()) {
            let i = *index
                .get(atom)
                .ok_or_else(|| Error::UnassignedAtom(atom.to_string()))?;
            last = last.max(i);
        }
        ready[last].push(r);
    }
    let mut search = Search {
        relations,
        ready: &ready,
        index: &index,
        target,
        inv: inverse_table(target),
        current: Vec::with_capacity(generators.len()),
        found: Vec::new(),
        limit,
    };
    if limit == 0 {
        return Ok(Vec::new());
    }
    if generators.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    search.extend()?;
    Ok(search.found)
}

struct Search<'a> {
    relations: &'a [(QuandleTerm, QuandleTerm)],
    ready: &'a [Vec<usize>],
    index: &'a HashMap<&'a str, usize>,
    target: &'a FiniteQuandle,
    inv: Vec<Vec<usize>>,
    current: Vec<usize>,
    found: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    fn consistent(&self, level: usize) -> Result<bool> {
        let value = |name: &str| {
            self.index
                .get(name)
                .and_then(|&i| self.current.get(i).copied())
        };
        for &r in &self.ready[level] {
            let (lhs, rhs) = &self.relations[r];
            if eval_term_in(lhs, self.target, &self.inv, &value)?
                != eval_term_in(rhs, self.target, &self.inv, &value)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn extend(&mut self) -> Result<()> {
        let level = self.current.len();
        for v in 0..self.target.size() {
            if self.found.len() >= self.limit {
                return Ok(());
            }
            self.current.push(v);
            if self.consistent(level)? {
                if level + 1 == self.ready.len() {
                    self.found.push(self.current.clone());
                } else {
                    self.extend()?;
                }
            }
            self.current.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bs::{equal, BsPresentation};
    use crate::quandle::{conj_quandle, trivial_quandle, FiniteGroupTable};
    use crate::term::{expand_term, parse_term, AtomAssignment};
    use proptest::prelude::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn rel(l: &str, r: &str) -> (QuandleTerm, QuandleTerm) {
        (parse_term(l).unwrap(), parse_term(r).unwrap())
    }

    /// Exhaustive scan over all |Q|^g assignments.
    fn brute(
        gens: &[String],
        rels: &[(QuandleTerm, QuandleTerm)],
        q: &FiniteQuandle,
    ) -> Vec<Vec<usize>> {
        let inv = inverse_table(q);
        let g = gens.len();
        let total = q.size().pow(g as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut img = vec![0; g];
            let mut c = code;
            for slot in img.iter_mut().rev() {
                *slot = c % q.size();
                c /= q.size();
            }
            let value = |name: &str| gens.iter().position(|x| x == name).map(|i| img[i]);
            let ok = rels.iter().all(|(l, r)| {
                eval_term_in(l, q, &inv, &value).unwrap()
                    == eval_term_in(r, q, &inv, &value).unwrap()
            });
            if ok {
                out.push(img);
            }
        }
        out
    }

    #[test]
    fn free_generator_into_trivial() {
        let homs = quandle_homs(&names(&["x"]), &[], &trivial_quandle(3).unwrap(), 100).unwrap();
        assert_eq!(homs, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn limit_zero_is_empty() {
        let homs = quandle_homs(&names(&["x"]), &[], &trivial_quandle(3).unwrap(), 0).unwrap();
        assert!(homs.is_empty());
    }

    #[test]
    fn unknown_atom_in_relation() {
        let err = quandle_homs(
            &names(&["x"]),
            &[rel("x", "y")],
            &trivial_quandle(2).unwrap(),
            5,
        );
        assert_eq!(err, Err(Error::UnassignedAtom("y".into())));
    }

    #[test]
    fn bs23_relations_into_conj_s3() {
        // conjugation by b^-1 a^2 b equals conjugation by a^3
        let rels = vec![
            rel("b *^-1 b * a * a * b", "b * a * a * a"),
            rel("a *^-1 b * a * a * b", "a * a * a * a"),
        ];
        let p = BsPresentation::new(2, 3).unwrap();
        let sigma = AtomAssignment::literal();
        for (l, r) in &rels {
            let lw = expand_term(l, &sigma).unwrap();
            let rw = expand_term(r, &sigma).unwrap();
            assert!(
                equal(&lw, &rw, &p).unwrap(),
                "relation {l} = {r} must hold in BS(2,3)"
            );
        }
        let (g, _) = FiniteGroupTable::symmetric(3).unwrap();
        let q = conj_quandle(&g);
        let gens = names(&["a", "b"]);
        let homs = quandle_homs(&gens, &rels, &q, usize::MAX).unwrap();
        assert_eq!(homs, brute(&gens, &rels, &q));
        assert!(!homs.is_empty() && homs.len() < 36);
    }

    proptest! {
        #[test]
        fn backtracking_matches_exhaustive_scan(
            g in 1usize..=4,
            target in 0usize..4,
            raw in prop::collection::vec(
                (0usize..4, prop::collection::vec((0usize..4, any::<bool>()), 0..4),
                 0usize..4, prop::collection::vec((0usize..4, any::<bool>()), 0..4)),
                0..3),
        ) {
            let gens: Vec<String> = (0..g).map(|i| format!("x{i}")).collect();
            let term = |h: usize, tail: &[(usize, bool)]| {
                let mut t = QuandleTerm::atom(gens[h % g].clone());
                for &(a, inv) in tail {
                    t = t.then(gens[a % g].clone(), if inv { Op::StarInv } else { Op::Star });
                }
                t
            };
            let rels: Vec<_> = raw.iter().map(|(h1, t1, h2, t2)| (term(*h1, t1), term(*h2, t2))).collect();
            let q = match target {
                0 => trivial_quandle(3).unwrap(),
                1 => trivial_quandle(4).unwrap(),
                2 => conj_quandle(&FiniteGroupTable::symmetric(3).unwrap().0),
                // the six transpositions of S4
                _ => {
                    let (s4, _) = FiniteGroupTable::symmetric(4).unwrap();
                    crate::quandle::dehn_quandle_finite(&s4, &[1]).unwrap().quandle
                }
            };
            let got = quandle_homs(&gens, &rels, &q, usize::MAX).unwrap();
            prop_assert_eq!(got, brute(&gens, &rels, &q));
        }
    }
}
