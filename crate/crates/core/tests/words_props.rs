use std::collections::BTreeMap;

use proptest::prelude::*;
use spheremcg::presentation::t_normal_form;
use spheremcg::words::{Alphabet, Letter, Word};

const RANK: u32 = 4;

fn free() -> Alphabet {
    Alphabet::Free { rank: RANK }
}

fn letter(rank: u32) -> impl Strategy<Value = Letter> {
    (1..=rank, any::<bool>()).prop_map(|(i, inv)| Letter::new(i, inv))
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(RANK), 0..max).prop_map(|ls| Word::reduce(free(), ls).unwrap())
}

fn braid_word(n: u32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=n, any::<bool>()), 0..max)
        .prop_map(move |ls| Word::reduce(Alphabet::Braid { n }, ls.into_iter().map(|(i, v)| Letter::new(i, v))).unwrap())
}

fn is_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[0] != p[1].inverse())
}

proptest! {
    #[test]
    fn concat_is_reduced_and_associative(u in word(12), v in word(12), w in word(12)) {
        let uv = u.concat(&v).unwrap();
        prop_assert!(is_reduced(&uv));
        prop_assert_eq!(uv.concat(&w).unwrap(), u.concat(&v.concat(&w).unwrap()).unwrap());
    }

    #[test]
    fn inverse_cancels(u in word(16)) {
        prop_assert!(u.concat(&u.inverse()).unwrap().is_empty());
        prop_assert_eq!(u.inverse().inverse(), u.clone());
    }

    #[test]
    fn pow_adds_exponents(u in word(6), j in -4i64..4, k in -4i64..4) {
        prop_assert_eq!(u.pow(j).concat(&u.pow(k)).unwrap(), u.pow(j + k));
    }

    #[test]
    fn cyclic_reduce_splits(u in word(16)) {
        let (core, conj) = u.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(conj.conjugate(&core).unwrap(), u);
    }

    #[test]
    fn planted_conjugator_is_recovered(u in word(10), g in word(8)) {
        prop_assume!(!u.is_empty());
        let v = g.conjugate(&u).unwrap();
        let w = Word::solve_conjugacy(&v, &u).unwrap().expect("planted conjugate");
        prop_assert_eq!(w.conjugate(&u).unwrap(), v);
    }

    #[test]
    fn non_conjugate_lengths_rejected(u in word(10)) {
        let (core, _) = u.cyclic_reduce();
        let longer = core.concat(&Word::letter(free(), Letter::gen(1)).unwrap()).unwrap();
        let (lcore, _) = longer.cyclic_reduce();
        prop_assume!(lcore.len() != core.len());
        prop_assert!(Word::solve_conjugacy(&u, &longer).unwrap().is_none());
    }

    #[test]
    fn substitute_is_a_homomorphism(u in word(10), v in word(10), imgs in prop::collection::vec(word(5), RANK as usize)) {
        let map: BTreeMap<u32, Word> = imgs.into_iter().enumerate().map(|(i, w)| (i as u32 + 1, w)).collect();
        let lhs = u.concat(&v).unwrap().substitute(free(), &map).unwrap();
        let rhs = u.substitute(free(), &map).unwrap().concat(&v.substitute(free(), &map).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_parse_round_trip(u in word(16)) {
        prop_assert_eq!(Word::parse(&u.to_string(), free()).unwrap(), u);
    }

    #[test]
    fn t_normal_form_parity_and_letters(u in braid_word(6, 16)) {
        let (parity, rest) = t_normal_form(&u);
        let ts = u.letters().iter().filter(|l| l.index() == 6).count();
        prop_assert_eq!(parity as usize, ts % 2);
        prop_assert!(rest.letters().iter().all(|l| l.index() != 6));
    }
}

#[test]
fn t_normal_form_preserves_the_element() {
    use spheremcg::action::ActionModel;
    let model = ActionModel::new(6).unwrap();
    let alphabet = Alphabet::Braid { n: 6 };
    for text in ["s1 t s2", "t s1 s3 t S5", "s4 s4 t t s2", "t", "S1 t S2 t s3 t"] {
        let u = Word::parse(text, alphabet).unwrap();
        let (parity, rest) = t_normal_form(&u);
        let t = Word::letter(alphabet, Letter::gen(6)).unwrap();
        let rebuilt = t.pow(parity as i64).concat(&rest).unwrap();
        assert!(model.equal_in_group(&u, &rebuilt).unwrap(), "{text}");
    }
}
