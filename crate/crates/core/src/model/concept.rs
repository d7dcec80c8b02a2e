//! Concept and role expression trees.

use std::collections::BTreeSet;
use std::fmt;

/// Comparison operator of a number restriction `(θ n R)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Comparator {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Comparator {
    pub const ALL: [Comparator; 5] = [
        Comparator::Lt,
        Comparator::Le,
        Comparator::Eq,
        Comparator::Ge,
        Comparator::Gt,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Lt => "<",
            Comparator::Le => "<=",
            Comparator::Eq => "=",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
        }
    }

    /// Whether `count θ n` holds.
    pub fn holds(self, count: u64, n: u32) -> bool {
        let n = u64::from(n);
        match self {
            Comparator::Lt => count < n,
            Comparator::Le => count <= n,
            Comparator::Eq => count == n,
            Comparator::Ge => count >= n,
            Comparator::Gt => count > n,
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A conjunction of primitive roles `P1 ⊓ ... ⊓ Pm`, kept as a non-empty set.
///
/// A larger set denotes a smaller relation: if `r` is a subset of `s`, every
/// `s`-pair is also an `r`-pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleExpr(BTreeSet<String>);

impl RoleExpr {
    /// Builds a role conjunction. Returns `None` for an empty set.
    pub fn new<I, S>(names: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let set: BTreeSet<String> = names.into_iter().map(Into::into).collect();
        (!set.is_empty()).then_some(RoleExpr(set))
    }

    pub fn primitive(name: impl Into<String>) -> Self {
        RoleExpr(BTreeSet::from([name.into()]))
    }

    pub fn names(&self) -> &BTreeSet<String> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every `other`-pair is guaranteed to be a `self`-pair.
    pub fn contains_relation(&self, other: &RoleExpr) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &RoleExpr) -> RoleExpr {
        RoleExpr(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &RoleExpr) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

/// A concept description.
///
/// The derived `Ord` compares the constructor tag first, in declaration order,
/// then the fields recursively. Canonical forms sort conjuncts and disjuncts
/// by this order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Bottom,
    /// A concept name: primitive, or defined in a terminology.
    Atomic(String),
    Not(Box<Concept>),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    All(RoleExpr, Box<Concept>),
    Some(RoleExpr, Box<Concept>),
    Number(Comparator, u32, RoleExpr),
}

impl Concept {
    pub fn atomic(name: impl Into<String>) -> Self {
        Concept::Atomic(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    /// Conjunction of the given concepts. Zero arguments give `Top`, one gives
    /// the argument itself.
    pub fn and(mut items: Vec<Concept>) -> Self {
        match items.len() {
            0 => Concept::Top,
            1 => items.pop().unwrap(),
            _ => Concept::And(items),
        }
    }

    /// Disjunction of the given concepts. Zero arguments give `Bottom`.
    pub fn or(mut items: Vec<Concept>) -> Self {
        match items.len() {
            0 => Concept::Bottom,
            1 => items.pop().unwrap(),
            _ => Concept::Or(items),
        }
    }

    pub fn all(role: RoleExpr, c: Concept) -> Self {
        Concept::All(role, Box::new(c))
    }

    pub fn some(role: RoleExpr, c: Concept) -> Self {
        Concept::Some(role, Box::new(c))
    }

    pub fn number(cmp: Comparator, n: u32, role: RoleExpr) -> Self {
        Concept::Number(cmp, n, role)
    }

    pub fn at_most(n: u32, role: RoleExpr) -> Self {
        Concept::Number(Comparator::Le, n, role)
    }

    pub fn at_least(n: u32, role: RoleExpr) -> Self {
        Concept::Number(Comparator::Ge, n, role)
    }

    /// Concept names mentioned anywhere in the expression.
    pub fn concept_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| {
            if let Concept::Atomic(n) = c {
                out.insert(n.clone());
            }
        });
        out
    }

    /// Primitive role names mentioned anywhere in the expression.
    pub fn role_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |c| match c {
            Concept::All(r, _) | Concept::Some(r, _) | Concept::Number(_, _, r) => {
                out.extend(r.names().iter().cloned());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Concept)>(&self, f: &mut F) {
        f(self);
        match self {
            Concept::Not(c) | Concept::All(_, c) | Concept::Some(_, c) => c.visit(f),
            Concept::And(cs) | Concept::Or(cs) => cs.iter().for_each(|c| c.visit(f)),
            Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Number(..) => {}
        }
    }

    /// Nesting depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) | Concept::Number(..) => 0,
            Concept::Not(c) | Concept::All(_, c) | Concept::Some(_, c) => 1 + c.depth(),
            Concept::And(cs) | Concept::Or(cs) => 1 + cs.iter().map(Concept::depth).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

impl fmt::Display for RoleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_role(self))
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_concept(self))
    }
}
