//! The worked example: base tuple A, liaison platform B, and leg data.

use exactalg::{parse_rat, Rat};

use crate::tuple::{Hexapod, SixTuple};

pub const A_TUPLE: [[&str; 3]; 6] = [
    ["0", "0", "0"],
    ["2", "0", "0"],
    ["3", "2", "0"],
    ["2", "3", "1"],
    ["1", "2", "2"],
    ["3", "1", "3"],
];

pub const B_TUPLE: [[&str; 3]; 6] = [
    ["0", "0", "0"],
    ["1397624/806205", "-92216/161241", "-437432/806205"],
    ["340244/161241", "82388/53747", "-835486/483723"],
    ["1341708/1236181", "3724594/1236181", "-922514/1236181"],
    ["1125372/2203627", "5582884/2203627", "2416984/2203627"],
    ["1719522/591217", "824050/591217", "1683982/591217"],
];

/// Squared legs d₁², d₂², d₃² for which the self-motion degenerates to a decic.
pub const SPECIAL_LEGS: [&str; 3] = ["62434791769/2888740009", "147143743/8595735", "431695696/46416969"];

/// Affine relations expressing d₄², d₅², d₆² through d₁², d₂², d₃²: rows are
/// (coefficient of d₁², of d₂², of d₃², constant).
pub const LEG_RELATIONS: [[&str; 4]; 3] = [
    ["71/92", "-105/92", "63/46", "-535801/676062"],
    ["71/41", "-75/41", "45/41", "-1908080/1074159"],
    ["71/44", "-45/44", "9/22", "-114265/154638"],
];

pub fn tuple_a() -> SixTuple {
    SixTuple::parse(&A_TUPLE).expect("fixture A")
}

pub fn tuple_b() -> SixTuple {
    SixTuple::parse(&B_TUPLE).expect("fixture B")
}

pub fn leg_relations() -> [[Rat; 4]; 3] {
    LEG_RELATIONS.map(|r| r.map(|s| parse_rat(s).unwrap()))
}

/// Complete the three free squared legs with the fixture's relations.
pub fn complete_legs(d: [Rat; 3]) -> [Rat; 6] {
    let rel = leg_relations();
    let f = |r: &[Rat; 4]| Rat::from(&r[0] * &d[0]) + Rat::from(&r[1] * &d[1]) + Rat::from(&r[2] * &d[2]) + &r[3];
    [d[0].clone(), d[1].clone(), d[2].clone(), f(&rel[0]), f(&rel[1]), f(&rel[2])]
}

pub fn special_legs() -> [Rat; 6] {
    complete_legs(SPECIAL_LEGS.map(|s| parse_rat(s).unwrap()))
}

pub fn generic_legs() -> [Rat; 6] {
    complete_legs([Rat::from(3), Rat::from(4), Rat::from(5)])
}

pub fn hexapod_special() -> Hexapod {
    Hexapod::new(tuple_a(), tuple_b(), Rat::from(1), special_legs()).unwrap()
}

pub fn hexapod_generic() -> Hexapod {
    Hexapod::new(tuple_a(), tuple_b(), Rat::from(1), generic_legs()).unwrap()
}
