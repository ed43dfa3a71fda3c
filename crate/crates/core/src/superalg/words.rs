//! Generator letters and PBW-ordered words in negative modes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{HalfInt, Parity};

/// Which superconformal algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Vir,
    Ns,
    N2,
}

impl AlgebraKind {
    /// Generator families in PBW order.
    pub fn roles(self) -> &'static [Role] {
        match self {
            AlgebraKind::Vir => &[Role::L],
            AlgebraKind::Ns => &[Role::L, Role::G],
            AlgebraKind::N2 => &[Role::L, Role::G1, Role::G2, Role::J],
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Vir => "vir",
            AlgebraKind::Ns => "ns",
            AlgebraKind::N2 => "n2",
        })
    }
}

/// Generator family. `G` belongs to NS; `G1`, `G2`, `J` to N2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    L,
    G,
    G1,
    G2,
    J,
}

impl Role {
    pub fn parity(self) -> Parity {
        match self {
            Role::L | Role::J => Parity::Even,
            Role::G | Role::G1 | Role::G2 => Parity::Odd,
        }
    }

    /// Integer modes for even roles, half-odd for odd ones.
    pub fn accepts(self, index: HalfInt) -> bool {
        match self.parity() {
            Parity::Even => index.is_integer(),
            Parity::Odd => index.is_half_odd(),
        }
    }

    /// Conformal weight of the generating field.
    pub fn conformal_weight(self) -> HalfInt {
        match self {
            Role::L => HalfInt::from_int(2),
            Role::J => HalfInt::from_int(1),
            _ => HalfInt::from_twice(3),
        }
    }

    /// Lowest mode that does not kill the vacuum (`-2`, `-3/2` or `-1`).
    pub fn vacuum_creation_start(self) -> HalfInt {
        -self.conformal_weight()
    }

    pub fn parse(s: &str) -> Option<Role> {
        match s.to_ascii_uppercase().as_str() {
            "L" => Some(Role::L),
            "G" => Some(Role::G),
            "G1" => Some(Role::G1),
            "G2" => Some(Role::G2),
            "J" => Some(Role::J),
            _ => None,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::L => "L",
            Role::G => "G",
            Role::G1 => "G1",
            Role::G2 => "G2",
            Role::J => "J",
        })
    }
}

/// One mode `X_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub role: Role,
    pub index: HalfInt,
}

impl Letter {
    pub fn new(role: Role, index: HalfInt) -> Self {
        Self { role, index }
    }

    pub fn adjoint(self) -> Self {
        Self { role: self.role, index: -self.index }
    }

    /// Modes killing a vacuum-type lowest weight vector beyond the positive ones.
    pub fn kills_vacuum(self) -> bool {
        self.index > self.role.vacuum_creation_start() && self.index.is_negative()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{}}}", self.role, self.index)
    }
}

/// Product of modes, leftmost acting last.
pub type Word = Vec<Letter>;

pub fn word_adjoint(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.adjoint()).collect()
}

pub fn word_weight(w: &[Letter]) -> HalfInt {
    w.iter().fold(HalfInt::ZERO, |acc, l| acc - l.index)
}

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

/// All PBW words of weight exactly `level`: families in PBW order, |index|
/// weakly decreasing within even families and strictly decreasing within odd
/// ones. With `vacuum`, words whose rightmost letter kills the vacuum are dropped.
pub fn pbw_words(kind: AlgebraKind, level: HalfInt, vacuum: bool) -> Vec<Word> {
    let mut out = Vec::new();
    build(kind.roles(), 0, level.twice(), level.twice(), &mut Vec::new(), &mut out);
    if vacuum {
        out.retain(|w: &Word| w.last().map_or(true, |l| !l.kills_vacuum()));
    }
    out
}

/// `bound` caps twice |index| of the next letter from family `fam`.
fn build(roles: &[Role], fam: usize, remaining: i64, bound: i64, cur: &mut Word, out: &mut Vec<Word>) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    if fam >= roles.len() {
        return;
    }
    let role = roles[fam];
    let mut t = bound.min(remaining);
    while t >= 1 {
        if role.accepts(HalfInt::from_twice(t)) {
            cur.push(Letter::new(role, HalfInt::from_twice(-t)));
            let next = if role.parity().is_odd() { t - 2 } else { t };
            build(roles, fam, remaining - t, next, cur, out);
            cur.pop();
        }
        t -= 1;
    }
    build(roles, fam + 1, remaining, remaining, cur, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(kind: AlgebraKind, tw: i64, vacuum: bool) -> usize {
        pbw_words(kind, HalfInt::from_twice(tw), vacuum).len()
    }

    #[test]
    fn virasoro_counts_are_partitions() {
        let p = [1, 1, 2, 3, 5, 7, 11];
        for (n, &want) in p.iter().enumerate() {
            assert_eq!(count(AlgebraKind::Vir, 2 * n as i64, false), want);
        }
        // vacuum module: partitions with no part 1
        let q = [1, 0, 1, 1, 2, 2, 4];
        for (n, &want) in q.iter().enumerate() {
            assert_eq!(count(AlgebraKind::Vir, 2 * n as i64, true), want);
        }
    }

    #[test]
    fn ns_words_ordered() {
        let ws = pbw_words(AlgebraKind::Ns, HalfInt::from_int(3), false);
        for w in &ws {
            assert_eq!(word_weight(w), HalfInt::from_int(3));
            for pair in w.windows(2) {
                assert!(pair[0].role <= pair[1].role);
                if pair[0].role == pair[1].role {
                    if pair[0].role.parity().is_odd() {
                        assert!(pair[0].index < pair[1].index);
                    } else {
                        assert!(pair[0].index <= pair[1].index);
                    }
                }
            }
        }
        // no duplicates
        let mut sorted = ws.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ws.len());
    }

    #[test]
    fn ns_vacuum_level_three_halves() {
        let ws = pbw_words(AlgebraKind::Ns, HalfInt::from_twice(3), true);
        assert_eq!(ws, vec![vec![Letter::new(Role::G, HalfInt::from_twice(-3))]]);
        assert_eq!(pbw_words(AlgebraKind::N2, HalfInt::ZERO, true), vec![Vec::<Letter>::new()]);
    }

    #[test]
    fn adjoint_reverses() {
        let w = vec![Letter::new(Role::L, HalfInt::from_int(-2)), Letter::new(Role::G, HalfInt::from_twice(-1))];
        let a = word_adjoint(&w);
        assert_eq!(a[0], Letter::new(Role::G, HalfInt::from_twice(1)));
        assert_eq!(word_adjoint(&a), w);
    }
}
