use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

/// An unpolarized proposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UProp {
    Atom(String),
    Bot,
    Or(Box<UProp>, Box<UProp>),
    Top,
    And(Box<UProp>, Box<UProp>),
    Imp(Box<UProp>, Box<UProp>),
}

/// A positive proposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pos {
    Atom(String),
    Down(Box<Neg>),
    Zero,
    Or(Box<Pos>, Box<Pos>),
    One,
    And(Box<Pos>, Box<Pos>),
}

/// A negative proposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Neg {
    Atom(String),
    Up(Box<Pos>),
    Imp(Box<Pos>, Box<Neg>),
    Top,
    And(Box<Neg>, Box<Neg>),
}

/// Atom names are `[a-z][a-zA-Z0-9_]*`.
pub fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl UProp {
    pub fn atom(name: &str) -> Self {
        UProp::Atom(name.into())
    }
    pub fn or(a: UProp, b: UProp) -> Self {
        UProp::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: UProp, b: UProp) -> Self {
        UProp::And(Box::new(a), Box::new(b))
    }
    pub fn imp(a: UProp, b: UProp) -> Self {
        UProp::Imp(Box::new(a), Box::new(b))
    }
    /// `a -> false`.
    pub fn negation(a: UProp) -> Self {
        UProp::imp(a, UProp::Bot)
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            UProp::Atom(_) | UProp::Bot | UProp::Top => 1,
            UProp::Or(a, b) | UProp::And(a, b) | UProp::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            UProp::Atom(p) => {
                out.insert(p.clone());
            }
            UProp::Bot | UProp::Top => {}
            UProp::Or(a, b) | UProp::And(a, b) | UProp::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

impl Pos {
    pub fn atom(name: &str) -> Self {
        Pos::Atom(name.into())
    }
    pub fn down(a: Neg) -> Self {
        Pos::Down(Box::new(a))
    }
    pub fn or(a: Pos, b: Pos) -> Self {
        Pos::Or(Box::new(a), Box::new(b))
    }
    pub fn and(a: Pos, b: Pos) -> Self {
        Pos::And(Box::new(a), Box::new(b))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Pos::Atom(_))
    }

    pub fn size(&self) -> usize {
        match self {
            Pos::Atom(_) | Pos::Zero | Pos::One => 1,
            Pos::Down(a) => 1 + a.size(),
            Pos::Or(a, b) | Pos::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Atom occurrences as `(name, positive?)` pairs.
    pub fn atoms(&self, out: &mut BTreeSet<(String, bool)>) {
        match self {
            Pos::Atom(p) => {
                out.insert((p.clone(), true));
            }
            Pos::Zero | Pos::One => {}
            Pos::Down(a) => a.atoms(out),
            Pos::Or(a, b) | Pos::And(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }
}

impl Neg {
    pub fn atom(name: &str) -> Self {
        Neg::Atom(name.into())
    }
    pub fn up(a: Pos) -> Self {
        Neg::Up(Box::new(a))
    }
    pub fn imp(a: Pos, b: Neg) -> Self {
        Neg::Imp(Box::new(a), Box::new(b))
    }
    pub fn and(a: Neg, b: Neg) -> Self {
        Neg::And(Box::new(a), Box::new(b))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Neg::Atom(_))
    }

    pub fn size(&self) -> usize {
        match self {
            Neg::Atom(_) | Neg::Top => 1,
            Neg::Up(a) => 1 + a.size(),
            Neg::Imp(a, b) => 1 + a.size() + b.size(),
            Neg::And(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn atoms(&self, out: &mut BTreeSet<(String, bool)>) {
        match self {
            Neg::Atom(p) => {
                out.insert((p.clone(), false));
            }
            Neg::Top => {}
            Neg::Up(a) => a.atoms(out),
            Neg::Imp(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
            Neg::And(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }
}

// Binary children are parenthesized unless they repeat the parent's
// connective on the right, which is where right associativity puts them.

#[derive(PartialEq, Clone, Copy)]
enum Op {
    Leaf,
    Or,
    And,
    Imp,
}

fn uop(p: &UProp) -> Op {
    match p {
        UProp::Or(..) => Op::Or,
        UProp::And(..) => Op::And,
        UProp::Imp(..) => Op::Imp,
        _ => Op::Leaf,
    }
}

fn write_uchild(f: &mut fmt::Formatter<'_>, parent: Op, child: &UProp, right: bool) -> fmt::Result {
    let op = uop(child);
    if op == Op::Leaf || (right && op == parent) {
        write!(f, "{child}")
    } else {
        write!(f, "({child})")
    }
}

impl fmt::Display for UProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, sym, b) = match self {
            UProp::Atom(p) => return f.write_str(p),
            UProp::Bot => return f.write_str("false"),
            UProp::Top => return f.write_str("true"),
            UProp::Or(a, b) => (a, "\\/", b),
            UProp::And(a, b) => (a, "/\\", b),
            UProp::Imp(a, b) => (a, "->", b),
        };
        let op = uop(self);
        write_uchild(f, op, a, false)?;
        write!(f, " {sym} ")?;
        write_uchild(f, op, b, true)
    }
}

#[derive(PartialEq, Clone, Copy)]
enum POp {
    Leaf,
    Plus,
    Times,
    With,
    Imp,
}

fn pop(a: &Pos) -> POp {
    match a {
        Pos::Or(..) => POp::Plus,
        Pos::And(..) => POp::Times,
        _ => POp::Leaf,
    }
}

fn nop(a: &Neg) -> POp {
    match a {
        Neg::Imp(..) => POp::Imp,
        Neg::And(..) => POp::With,
        _ => POp::Leaf,
    }
}

fn paren_if(f: &mut fmt::Formatter<'_>, on: bool, inner: &dyn fmt::Display) -> fmt::Result {
    if on {
        write!(f, "({inner})")
    } else {
        write!(f, "{inner}")
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = pop(self);
        let (a, sym, b) = match self {
            Pos::Atom(p) => return write!(f, "{p}+"),
            Pos::Down(a) => return write!(f, "dn({a})"),
            Pos::Zero => return f.write_str("0"),
            Pos::One => return f.write_str("1"),
            Pos::Or(a, b) => (a, "+", b),
            Pos::And(a, b) => (a, "*", b),
        };
        paren_if(f, pop(a) != POp::Leaf, a)?;
        write!(f, " {sym} ")?;
        let bo = pop(b);
        paren_if(f, bo != POp::Leaf && bo != op, b)
    }
}

impl fmt::Display for Neg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Neg::Atom(p) => write!(f, "{p}-"),
            Neg::Up(a) => write!(f, "up({a})"),
            Neg::Top => f.write_str("T"),
            Neg::Imp(a, b) => {
                paren_if(f, pop(a) != POp::Leaf, a)?;
                f.write_str(" -> ")?;
                let bo = nop(b);
                paren_if(f, bo != POp::Leaf && bo != POp::Imp, b)
            }
            Neg::And(a, b) => {
                paren_if(f, nop(a) != POp::Leaf, a)?;
                f.write_str(" & ")?;
                let bo = nop(b);
                paren_if(f, bo != POp::Leaf && bo != POp::With, b)
            }
        }
    }
}
