use num_complex::Complex64;
use proptest::prelude::*;
use qibe_core::revcirc::{Circuit, Gate};
use qibe_core::sim::{Bits, SparseState, StateError};

const MAX_WIDTH: usize = 8;

fn gate(width: usize) -> impl Strategy<Value = Gate> {
    // a random permutation of the qubits supplies distinct operands
    (0usize..3, Just((0..width).collect::<Vec<_>>()).prop_shuffle()).prop_map(move |(k, q)| match k.min(width - 1) {
        0 => Gate::x(q[0]),
        1 => Gate::cx(q[0], q[1]),
        _ => Gate::ccx(q[0], q[1], q[2]),
    })
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (3..=MAX_WIDTH).prop_flat_map(|w| {
        proptest::collection::vec(gate(w), 0..=200).prop_map(move |g| Circuit::new(w, g, vec![]).unwrap())
    })
}

fn amplitude() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("non-zero", |(re, im)| re * re + im * im > 1e-3)
        .prop_map(|(re, im)| Complex64::new(re, im))
}

fn state(width: usize) -> impl Strategy<Value = SparseState> {
    proptest::collection::btree_map(0..1u64 << width, amplitude(), 1..=8).prop_map(move |m| {
        let norm: f64 = m.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        SparseState::from_values(width, m.into_iter().map(|(v, a)| (v, a / norm))).unwrap()
    })
}

fn circuit_and_state() -> impl Strategy<Value = (Circuit, SparseState)> {
    circuit().prop_flat_map(|c| {
        let w = c.width();
        (Just(c), state(w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn inverse_round_trip((c, s) in circuit_and_state()) {
        let out = s.apply(&c).unwrap();
        prop_assert_eq!(out.apply(&c.invert()).unwrap(), s);
    }

    #[test]
    fn permutation_keeps_amplitudes((c, s) in circuit_and_state()) {
        let out = s.apply(&c).unwrap();
        prop_assert_eq!(out.len(), s.len());
        // sums differ in the last ulp when branch order changes
        prop_assert!((out.norm_sqr() - s.norm_sqr()).abs() < 1e-12);
        let mut before: Vec<_> = s.branches().values().map(|a| (a.re.to_bits(), a.im.to_bits())).collect();
        let mut after: Vec<_> = out.branches().values().map(|a| (a.re.to_bits(), a.im.to_bits())).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
    }

    /// The state after the circuit is the branch-wise image of the input.
    #[test]
    fn linearity((c, s) in circuit_and_state()) {
        let out = s.apply(&c).unwrap();
        for (bits, amp) in s.branches() {
            let mut image = bits.clone();
            image.apply_gates(c.gates());
            prop_assert_eq!(out.branches().get(&image), Some(amp));
            let single = SparseState::from_bits(c.width(), bits.clone()).apply(&c).unwrap();
            prop_assert_eq!(single.branches().keys().next(), Some(&image));
        }
    }
}

#[test]
fn rejects_bad_states() {
    let one = Complex64::new(1.0, 0.0);
    assert!(matches!(SparseState::from_values(2, [(4, one)]), Err(StateError::Overflow { .. })));
    assert!(matches!(SparseState::from_values(2, [(1, one), (2, one)]), Err(StateError::NotNormalized { .. })));
    assert!(matches!(SparseState::from_values(2, [(1, one * 0.0)]), Err(StateError::Empty)));
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    assert!(matches!(
        SparseState::from_superposition(2, [(Bits::from_u64(2, 1).unwrap(), h), (Bits::from_u64(2, 1).unwrap(), h)]),
        Err(StateError::DuplicateBranch(_))
    ));
    assert!(SparseState::from_bitstrings(3, [("01", one)]).is_err());
    let s = SparseState::from_basis(3, 5).unwrap();
    let c = Circuit::new(4, vec![], vec![]).unwrap();
    assert!(matches!(s.apply(&c), Err(StateError::WidthMismatch { .. })));
}

#[test]
fn wide_registers() {
    // 130 qubits: one CX from qubit 0 to qubit 129
    let c = Circuit::new(130, vec![Gate::x(0), Gate::cx(0, 129)], vec![]).unwrap();
    let s = SparseState::from_bits(130, Bits::zero(130)).apply(&c).unwrap();
    let bits = s.branches().keys().next().unwrap();
    assert!(bits.get(0) && bits.get(129));
    assert_eq!(s.apply(&c.invert()).unwrap(), SparseState::from_bits(130, Bits::zero(130)));
}

#[test]
fn msb_first_bitstrings() {
    let one = Complex64::new(1.0, 0.0);
    let s = SparseState::from_bitstrings(3, [("001", one)]).unwrap();
    assert_eq!(s, SparseState::from_basis(3, 1).unwrap());
    let c = Circuit::new(3, vec![Gate::cx(0, 2)], vec![]).unwrap();
    assert_eq!(s.apply(&c).unwrap(), SparseState::from_bitstrings(3, [("101", one)]).unwrap());
}
