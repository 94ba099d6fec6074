//! Poker hand classification: all nine hands in a single match over a
//! multiset of cards.

use crate::engine::{clause, match_first, MatchClause};
use crate::error::{Error, Result};
use crate::matcher::{algebraic, integer, multiset, thunk, Matcher};
use crate::pattern::{cons, ctor, nil, pvar, vpat, wildcard, Pat};
use crate::value::{Expr, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suit {
    Diamond,
    Clover,
    Heart,
    Spade,
}

impl Suit {
    fn name(self) -> &'static str {
        match self {
            Suit::Diamond => "Diamond",
            Suit::Clover => "Clover",
            Suit::Heart => "Heart",
            Suit::Spade => "Spade",
        }
    }
}

pub fn card(suit: Suit, number: i64) -> Value {
    Value::term(
        "Card",
        vec![Value::term(suit.name(), vec![]), Value::Int(number)],
    )
}

pub fn suit_matcher() -> Matcher {
    algebraic(
        vec![
            ("Diamond", vec![]),
            ("Clover", vec![]),
            ("Heart", vec![]),
            ("Spade", vec![]),
        ],
        "suit",
    )
}

pub fn card_matcher() -> Matcher {
    algebraic(
        vec![("Card", vec![thunk(suit_matcher()), thunk(integer())])],
        "card",
    )
}

fn card_pat(suit: Pat, number: Pat) -> Pat {
    ctor("Card", vec![suit, number])
}

fn n_minus(k: i64) -> Pat {
    vpat(Expr::sub(Expr::var("n"), Expr::int(k)))
}

fn hand_clauses() -> Vec<MatchClause> {
    let same_suit = || vpat(Expr::var("s"));
    let same_n = || vpat(Expr::var("n"));
    let same_m = || vpat(Expr::var("m"));

    let straight_flush = cons(
        card_pat(pvar("s"), pvar("n")),
        cons(
            card_pat(same_suit(), n_minus(1)),
            cons(
                card_pat(same_suit(), n_minus(2)),
                cons(
                    card_pat(same_suit(), n_minus(3)),
                    cons(card_pat(same_suit(), n_minus(4)), nil()),
                ),
            ),
        ),
    );
    let four = cons(
        card_pat(wildcard(), pvar("n")),
        cons(
            card_pat(wildcard(), same_n()),
            cons(
                card_pat(wildcard(), same_n()),
                cons(card_pat(wildcard(), same_n()), wildcard()),
            ),
        ),
    );
    let full_house = cons(
        card_pat(wildcard(), pvar("m")),
        cons(
            card_pat(wildcard(), same_m()),
            cons(
                card_pat(wildcard(), same_m()),
                cons(
                    card_pat(wildcard(), pvar("n")),
                    cons(card_pat(wildcard(), same_n()), nil()),
                ),
            ),
        ),
    );
    let flush = cons(
        card_pat(pvar("s"), wildcard()),
        cons(
            card_pat(same_suit(), wildcard()),
            cons(
                card_pat(same_suit(), wildcard()),
                cons(
                    card_pat(same_suit(), wildcard()),
                    cons(card_pat(same_suit(), wildcard()), nil()),
                ),
            ),
        ),
    );
    let straight = cons(
        card_pat(wildcard(), pvar("n")),
        cons(
            card_pat(wildcard(), n_minus(1)),
            cons(
                card_pat(wildcard(), n_minus(2)),
                cons(
                    card_pat(wildcard(), n_minus(3)),
                    cons(card_pat(wildcard(), n_minus(4)), nil()),
                ),
            ),
        ),
    );
    let three = cons(
        card_pat(wildcard(), pvar("n")),
        cons(
            card_pat(wildcard(), same_n()),
            cons(card_pat(wildcard(), same_n()), wildcard()),
        ),
    );
    let two_pair = cons(
        card_pat(wildcard(), pvar("m")),
        cons(
            card_pat(wildcard(), same_m()),
            cons(
                card_pat(wildcard(), pvar("n")),
                cons(card_pat(wildcard(), same_n()), wildcard()),
            ),
        ),
    );
    let one_pair = cons(
        card_pat(wildcard(), pvar("n")),
        cons(card_pat(wildcard(), same_n()), wildcard()),
    );
    let hand = |name: &str| Expr::str(name);

    vec![
        clause(straight_flush, hand("Straight flush")),
        clause(four, hand("Four of kind")),
        clause(full_house, hand("Full house")),
        clause(flush, hand("Flush")),
        clause(straight, hand("Straight")),
        clause(three, hand("Three of kind")),
        clause(two_pair, hand("Two pair")),
        clause(one_pair, hand("One pair")),
        clause(wildcard(), hand("Nothing")),
    ]
}

/// Classifies a hand of exactly five cards.
pub fn poker_hand(cards: &Value) -> Result<String> {
    let n = cards.as_coll()?.to_vec()?.len();
    if n != 5 {
        return Err(Error::ArityMismatch {
            context: "poker hand",
            expected: 5,
            got: n,
        });
    }
    Ok(
        match_first(cards, &multiset(card_matcher()), hand_clauses())?
            .as_str()?
            .to_string(),
    )
}
