//! Gate emitters for the arithmetic primitives.
//!
//! Each emitter appends to a gate list and works on caller-chosen qubits,
//! so the public builders and the scheme circuits share one implementation.
//! All registers are little-endian slices (`reg[0]` is the least
//! significant bit).

use alloc::vec::Vec;

use super::{Gate, Qubit};

fn maj(g: &mut Vec<Gate>, c: Qubit, b: Qubit, a: Qubit) {
    g.push(Gate::cx(a, b));
    g.push(Gate::cx(a, c));
    g.push(Gate::ccx(c, b, a));
}

fn uma(g: &mut Vec<Gate>, c: Qubit, b: Qubit, a: Qubit) {
    g.push(Gate::ccx(c, b, a));
    g.push(Gate::cx(a, c));
    g.push(Gate::cx(c, b));
}

/// Ripple-carry adder (MAJ/UMA ladder): `b += a + carry_in`.
///
/// `a` has `l` bits. If `b` has `l + 1` bits the carry lands in `b[l]`,
/// i.e. the sum is taken mod `2^(l+1)`; with `l` bits it is mod `2^l`.
/// `a` and `carry_in` are restored. Uses `2l` Toffolis.
pub(crate) fn add(g: &mut Vec<Gate>, a: &[Qubit], b: &[Qubit], carry_in: Qubit) {
    let l = a.len();
    debug_assert!(l >= 1 && (b.len() == l || b.len() == l + 1));
    maj(g, carry_in, b[0], a[0]);
    for i in 1..l {
        maj(g, a[i - 1], b[i], a[i]);
    }
    if b.len() > l {
        g.push(Gate::cx(a[l - 1], b[l]));
    }
    for i in (1..l).rev() {
        uma(g, a[i - 1], b[i], a[i]);
    }
    uma(g, carry_in, b[0], a[0]);
}

/// Inverse of [`add`]: `b -= a + carry_in` in two's complement.
pub(crate) fn sub(g: &mut Vec<Gate>, a: &[Qubit], b: &[Qubit], carry_in: Qubit) {
    let mut tmp = Vec::new();
    add(&mut tmp, a, b, carry_in);
    g.extend(tmp.into_iter().rev());
}

/// `flag ^= [a < b]` for `l`-bit `a`, `b`; both restored.
///
/// Runs the carry ladder on `(!a) + b`, whose carry-out is `[b > a]`,
/// copies the carry, then unwinds the ladder.
pub(crate) fn compare(g: &mut Vec<Gate>, a: &[Qubit], b: &[Qubit], flag: Qubit, zero: Qubit) {
    let l = a.len();
    debug_assert_eq!(l, b.len());
    let mut ladder = Vec::new();
    for &q in a {
        ladder.push(Gate::x(q));
    }
    maj(&mut ladder, zero, b[0], a[0]);
    for i in 1..l {
        maj(&mut ladder, a[i - 1], b[i], a[i]);
    }
    g.extend(ladder.iter().cloned());
    g.push(Gate::cx(a[l - 1], flag));
    g.extend(ladder.into_iter().rev());
}

/// X on every bit of `target` where `value` has a 1.
pub(crate) fn const_xor(g: &mut Vec<Gate>, value: u64, target: &[Qubit]) {
    for (i, &q) in target.iter().enumerate() {
        if (value >> i) & 1 == 1 {
            g.push(Gate::x(q));
        }
    }
}

/// CX from `control` onto every bit of `target` where `value` has a 1.
pub(crate) fn ctrl_copy_const(g: &mut Vec<Gate>, value: u64, control: Qubit, target: &[Qubit]) {
    for (i, &q) in target.iter().enumerate() {
        if (value >> i) & 1 == 1 {
            g.push(Gate::cx(control, q));
        }
    }
}

/// Bitwise CX `src[i] -> dst[i]`.
pub(crate) fn fanout(g: &mut Vec<Gate>, src: &[Qubit], dst: &[Qubit]) {
    for (&s, &d) in src.iter().zip(dst) {
        g.push(Gate::cx(s, d));
    }
}

/// Toffoli ladder for an `l`-controlled NOT: `2l - 3` Toffolis over
/// `l - 2` clean ancillas, which are restored.
pub(crate) fn mcx(g: &mut Vec<Gate>, controls: &[Qubit], target: Qubit, ancillas: &[Qubit]) {
    let l = controls.len();
    debug_assert!(l >= 2 && ancillas.len() >= l - 2);
    if l == 2 {
        g.push(Gate::ccx(controls[0], controls[1], target));
        return;
    }
    let mut up = Vec::with_capacity(l - 2);
    up.push(Gate::ccx(controls[0], controls[1], ancillas[0]));
    for i in 2..l - 1 {
        up.push(Gate::ccx(controls[i], ancillas[i - 2], ancillas[i - 1]));
    }
    g.extend(up.iter().cloned());
    g.push(Gate::ccx(controls[l - 1], ancillas[l - 3], target));
    g.extend(up.into_iter().rev());
}

/// `(a, b) -> (a, (a + b) mod q)` for `a, b < q`.
///
/// `b` carries one extra high qubit (clean on entry and exit). `modulus`
/// is a clean `l`-qubit register used to hold `q`; `flag` and `carry_in`
/// are clean single qubits. Structure: add, subtract `q`, record the
/// borrow, add `q` back under the borrow, then clear the borrow with a
/// comparison against `a`.
pub(crate) struct ModAddQubits<'a> {
    pub a: &'a [Qubit],
    pub b: &'a [Qubit],
    pub modulus: &'a [Qubit],
    pub flag: Qubit,
    pub carry_in: Qubit,
}

pub(crate) fn mod_add(g: &mut Vec<Gate>, q: u64, r: &ModAddQubits<'_>) {
    let l = r.a.len();
    debug_assert!(r.b.len() == l + 1 && r.modulus.len() == l);
    let top = r.b[l];

    add(g, r.a, r.b, r.carry_in);
    const_xor(g, q, r.modulus);
    sub(g, r.modulus, r.b, r.carry_in);
    g.push(Gate::cx(top, r.flag));
    const_xor(g, q, r.modulus);

    ctrl_copy_const(g, q, r.flag, r.modulus);
    add(g, r.modulus, r.b, r.carry_in);
    ctrl_copy_const(g, q, r.flag, r.modulus);

    // flag was [a + b < q]; the result is >= a exactly in that case
    compare(g, &r.b[..l], r.a, r.flag, r.carry_in);
    g.push(Gate::x(r.flag));
}

/// Inverse of [`mod_add`]: `(a, b) -> (a, (b - a) mod q)`.
pub(crate) fn mod_sub(g: &mut Vec<Gate>, q: u64, r: &ModAddQubits<'_>) {
    let mut tmp = Vec::new();
    mod_add(&mut tmp, q, r);
    g.extend(tmp.into_iter().rev());
}

/// Conditional two's-complement magnitude on an `(l+1)`-qubit register:
/// when the top (sign) qubit is 1 the low `l` qubits are complemented and
/// incremented mod `2^l`; the sign qubit is untouched. `zero` is a clean
/// `l`-qubit register used as the addend of the increment.
pub(crate) fn abs(g: &mut Vec<Gate>, value: &[Qubit], zero: &[Qubit]) {
    let l = value.len() - 1;
    debug_assert_eq!(zero.len(), l);
    let sign = value[l];
    for &q in &value[..l] {
        g.push(Gate::cx(sign, q));
    }
    // zero + low + sign, mod 2^l
    add(g, zero, &value[..l], sign);
}
