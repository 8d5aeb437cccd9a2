// Prints the integer witness pairs for zeta(2) and zeta(3) along with their
// certified envelopes; the shrinking |a zeta + b| > 0 is the irrationality
// engine.

#include <cstdio>

#include <diophant/diophant.hpp>

using namespace diophant;

int main() {
    std::printf("n   a zeta(2) + b                    |form|        certified\n");
    for (unsigned long n = 0; n <= 8; ++n) {
        ZetaWitness w = zeta2_witness(n);
        BoundCheck c = check_zeta2_bound(n);
        DyadicInterval J = abs_of(witness_form_interval(w, 192));
        std::printf("%-3lu %14s z + %-15s %-13s %s\n", n, to_string(w.a).c_str(),
                    to_string(w.b).c_str(), decimal_string(J.hi).c_str(),
                    c.positive && c.within_bound ? "yes" : "NO");
    }

    std::printf("\nn   a zeta(3) + b                    |form|        certified\n");
    for (unsigned long n = 0; n <= 8; ++n) {
        ZetaWitness w = zeta3_witness(n);
        BoundCheck c = check_zeta3_bound(n);
        DyadicInterval J = abs_of(witness_form_interval(w, 192));
        std::printf("%-3lu %14s z + %-15s %-13s %s\n", n, to_string(w.a).c_str(),
                    to_string(w.b).c_str(), decimal_string(J.hi).c_str(),
                    c.positive && c.within_bound ? "yes" : "NO");
    }

    std::printf("\nkernel maxima against their algebraic ceilings\n");
    KernelMaxReport k2 = kernel2_report(64);
    std::printf("  two variables:   best %s  ceiling %s  ok=%s\n",
                decimal_string(k2.best_value).c_str(),
                decimal_string(k2.bound_enclosure.hi).c_str(),
                k2.within_bound ? "yes" : "NO");
    KernelMaxReport k3 = kernel3_report(40);
    std::printf("  three variables: best %s  ceiling %s  ok=%s\n",
                decimal_string(k3.best_value).c_str(),
                decimal_string(k3.bound_enclosure.hi).c_str(),
                k3.within_bound ? "yes" : "NO");

    std::printf("\nlcm(1..n) stays under 3^n: ");
    LcmSequence seq(40);
    BigInt pow3 = 3;
    bool ok = true;
    for (std::uint64_t n = 2; n <= 40; ++n) {
        pow3 *= 3;
        if (seq.push() > pow3) ok = false;
    }
    std::printf("%s up to n=40\n", ok ? "holds" : "FAILS");
    return 0;
}
