//! Bounded-depth quandle closures inside `Conj(BS(m, n))`.

use std::collections::HashMap;

use crate::bs::{abelian_image, equal, pinch_reduce, AbelianImage, BsPresentation};
use crate::error::{Error, Result};
use crate::term::Op;
use crate::word::GroupWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureLimits {
    pub max_depth: usize,
    pub max_elements: usize,
}

impl Default for ClosureLimits {
    fn default() -> Self {
        ClosureLimits {
            max_depth: 4,
            max_elements: 50_000,
        }
    }
}

/// How a closure element was first reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivation {
    Generator(usize),
    /// `elements[parent] *^op generators[operand]`.
    Step {
        parent: usize,
        op: Op,
        operand: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureElement {
    /// Pinch-reduced representative.
    pub word: GroupWord,
    pub depth: usize,
    pub derivation: Derivation,
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub generators: Vec<GroupWord>,
    pub elements: Vec<ClosureElement>,
    presentation: BsPresentation,
    buckets: HashMap<AbelianImage, Vec<usize>>,
}

impl Closure {
    /// Index of the element equal to `w` in the group, if any.
    pub fn find(&self, w: &GroupWord) -> Result<Option<usize>> {
        let p = &self.presentation;
        let Some(bucket) = self.buckets.get(&abelian_image(w, p)) else {
            return Ok(None);
        };
        for &i in bucket {
            if equal(&self.elements[i].word, w, p)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// A term-like rendering of how element `i` was reached, with generators
    /// shown through `names`.
    pub fn derivation_text(&self, i: usize, names: &[String]) -> String {
        match self.elements[i].derivation {
            Derivation::Generator(g) => names[g].clone(),
            Derivation::Step {
                parent,
                op,
                operand,
            } => {
                format!(
                    "{} {op} {}",
                    self.derivation_text(parent, names),
                    names[operand]
                )
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn insert(&mut self, word: GroupWord, depth: usize, derivation: Derivation) -> Result<bool> {
        let word = pinch_reduce(&word, &self.presentation)?;
        if self.find(&word)?.is_some() {
            return Ok(false);
        }
        let key = abelian_image(&word, &self.presentation);
        self.buckets
            .entry(key)
            .or_default()
            .push(self.elements.len());
        self.elements.push(ClosureElement {
            word,
            depth,
            derivation,
        });
        Ok(true)
    }
}

/// Every element reachable from `generators` by at most `depth` operations
/// `x *^±1 g` with `g` a generator, deduplicated by equality in `BS(m, n)`.
/// Elements appear in breadth-first order.
pub fn bounded_closure_bs(
    p: &BsPresentation,
    generators: &[GroupWord],
    depth: usize,
    limits: ClosureLimits,
) -> Result<Closure> {
    if generators.is_empty() {
        return Err(Error::Precondition(
            "closure needs at least one generator".into(),
        ));
    }
    if depth > limits.max_depth {
        return Err(Error::ResourceLimit(format!(
            "closure depth {depth} exceeds the configured maximum {}",
            limits.max_depth
        )));
    }
    let gens: Vec<GroupWord> = generators
        .iter()
        .map(|g| pinch_reduce(g, p))
        .collect::<Result<_>>()?;
    let mut closure = Closure {
        generators: gens.clone(),
        elements: Vec::new(),
        presentation: *p,
        buckets: HashMap::new(),
    };
    for (i, g) in gens.iter().enumerate() {
        closure.insert(g.clone(), 0, Derivation::Generator(i))?;
    }
    let mut frontier: Vec<usize> = (0..closure.len()).collect();
    for level in 1..=depth {
        let mut next = Vec::new();
        for &parent in &frontier {
            for (operand, g) in gens.iter().enumerate() {
                for op in [Op::Star, Op::StarInv] {
                    let x = &closure.elements[parent].word;
                    let w = match op {
                        Op::Star => x.conjugate_by(g)?,
                        Op::StarInv => x.conjugate_by_inverse(g)?,
                    };
                    if closure.insert(
                        w,
                        level,
                        Derivation::Step {
                            parent,
                            op,
                            operand,
                        },
                    )? {
                        next.push(closure.len() - 1);
                        if closure.len() > limits.max_elements {
                            return Err(Error::ResourceLimit(format!(
                                "closure exceeded {} elements",
                                limits.max_elements
                            )));
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(closure)
}
