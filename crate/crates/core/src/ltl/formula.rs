use std::fmt;

use num_rational::BigRational;

use crate::numeric::render_decimal;

/// Comparison operators usable inside numeric predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
        }
    }

    pub fn holds<T: PartialOrd>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            CmpOp::Lt => lhs < rhs,
            CmpOp::Le => lhs <= rhs,
            CmpOp::Gt => lhs > rhs,
            CmpOp::Ge => lhs >= rhs,
            CmpOp::Eq => lhs == rhs,
            CmpOp::Ne => lhs != rhs,
        }
    }
}

/// Right-hand side of a numeric comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Operand {
    Const(BigRational),
    Var(String),
}

/// An atomic proposition: a boolean name or a single numeric comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predicate {
    BoolAtom(String),
    Comparison { var: String, op: CmpOp, rhs: Operand },
}

impl Predicate {
    pub fn atom(name: impl Into<String>) -> Self {
        Predicate::BoolAtom(name.into())
    }

    pub fn compare(var: impl Into<String>, op: CmpOp, rhs: BigRational) -> Self {
        Predicate::Comparison { var: var.into(), op, rhs: Operand::Const(rhs) }
    }

    /// Every identifier the predicate mentions.
    pub fn identifiers(&self) -> Vec<&str> {
        match self {
            Predicate::BoolAtom(name) => vec![name],
            Predicate::Comparison { var, rhs: Operand::Var(other), .. } => vec![var, other],
            Predicate::Comparison { var, .. } => vec![var],
        }
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self, Predicate::BoolAtom(_))
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::BoolAtom(name) => f.write_str(name),
            Predicate::Comparison { var, op, rhs } => {
                write!(f, "{var} {} ", op.symbol())?;
                match rhs {
                    Operand::Const(c) => f.write_str(&render_decimal(c)),
                    Operand::Var(v) => f.write_str(v),
                }
            }
        }
    }
}

/// Words reserved by the formula syntax.
pub const KEYWORDS: [&str; 7] = ["G", "F", "X", "U", "W", "true", "false"];

/// Nonempty, starts with an ASCII letter, then letters, digits or `_`.
pub fn is_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// LTL over predicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Predicate),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(Predicate::atom(name))
    }

    pub fn pred(p: Predicate) -> Self {
        Formula::Atom(p)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn next(self) -> Self {
        Formula::Next(Box::new(self))
    }

    pub fn eventually(self) -> Self {
        Formula::Eventually(Box::new(self))
    }

    pub fn globally(self) -> Self {
        Formula::Globally(Box::new(self))
    }

    pub fn until(self, rhs: Formula) -> Self {
        Formula::Until(Box::new(self), Box::new(rhs))
    }

    pub fn weak_until(self, rhs: Formula) -> Self {
        Formula::WeakUntil(Box::new(self), Box::new(rhs))
    }

    /// Left-nested conjunction of `parts`; `None` when empty.
    pub fn conjoin<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction of `parts`; `None` when empty.
    pub fn disjoin<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(a) | Next(a) | Eventually(a) | Globally(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) | WeakUntil(a, b) => vec![a, b],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn is_temporal_operator(&self) -> bool {
        use Formula::*;
        matches!(self, Next(_) | Eventually(_) | Globally(_) | Until(..) | WeakUntil(..))
    }

    /// No temporal operator anywhere in the tree.
    pub fn is_propositional(&self) -> bool {
        !self.is_temporal_operator() && self.children().iter().all(|c| c.is_propositional())
    }

    /// Predicates in first-occurrence order, without duplicates.
    pub fn predicates(&self) -> Vec<&Predicate> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a Predicate>) {
            if let Formula::Atom(p) = f {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Operands of a maximal `&` chain (a non-conjunction yields itself).
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b) => {
                let mut out = a.conjuncts();
                out.extend(b.conjuncts());
                out
            }
            other => vec![other],
        }
    }

    /// Operands of a maximal `|` chain.
    pub fn disjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::Or(a, b) => {
                let mut out = a.disjuncts();
                out.extend(b.disjuncts());
                out
            }
            other => vec![other],
        }
    }

    /// Re-associates every `&` and `|` chain to left-nested form, keeping
    /// operand order. Two formulas equal up to associativity normalize to
    /// the same tree.
    pub fn normalized(&self) -> Formula {
        use Formula::*;
        match self {
            True | False | Atom(_) => self.clone(),
            And(..) => Formula::conjoin(self.conjuncts().into_iter().map(Formula::normalized))
                .expect("nonempty chain"),
            Or(..) => Formula::disjoin(self.disjuncts().into_iter().map(Formula::normalized))
                .expect("nonempty chain"),
            Not(a) => a.normalized().not(),
            Next(a) => a.normalized().next(),
            Eventually(a) => a.normalized().eventually(),
            Globally(a) => a.normalized().globally(),
            Implies(a, b) => a.normalized().implies(b.normalized()),
            Until(a, b) => a.normalized().until(b.normalized()),
            WeakUntil(a, b) => a.normalized().weak_until(b.normalized()),
        }
    }

    /// True when no `F` or `U` occurs under an even number of negations
    /// (implication antecedents count as one negation).
    pub fn is_safety_shaped(&self) -> bool {
        fn ok(f: &Formula, positive: bool) -> bool {
            use Formula::*;
            match f {
                True | False | Atom(_) => true,
                Not(a) => ok(a, !positive),
                Eventually(a) => !positive && ok(a, positive),
                Until(a, b) => !positive && ok(a, positive) && ok(b, positive),
                Globally(a) => positive && ok(a, positive),
                WeakUntil(a, b) => positive && ok(a, positive) && ok(b, positive),
                Next(a) => ok(a, positive),
                And(a, b) | Or(a, b) => ok(a, positive) && ok(b, positive),
                Implies(a, b) => ok(a, !positive) && ok(b, positive),
            }
        }
        ok(self, true)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render_ltl(self))
    }
}
