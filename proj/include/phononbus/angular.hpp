#pragma once

namespace phononbus {

// Wigner 3j with integer l and m arguments.
double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3);

// integral of Y_l1^m1 * Y_l2^m2 * Y_l3^m3 over the sphere (no conjugates).
double gaunt(int l1, int m1, int l2, int m2, int l3, int m3);

// <Y_l1^m1 | Y_L^M | Y_l2^m2> — the bra is conjugated.
double directed_gaunt(int l1, int m1, int L, int M, int l2, int m2);

}  // namespace phononbus
