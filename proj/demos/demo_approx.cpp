// Walks the pigeonhole machinery on sqrt(2): single fractions, a joint
// system, and the improving stream.

#include <cstdio>

#include <diophant/diophant.hpp>

using namespace diophant;

int main() {
    RealOracle root2 = RealOracle::sqrt_of(BigInt(2));

    std::printf("best |n*sqrt2 - p| below each denominator cap\n");
    for (long n : {10L, 100L, 1000L, 10000L}) {
        ApproxResult r = dirichlet_approx(root2, BigInt(n));
        std::printf("  N=%-6ld n=%-5s p=%-6s |err| <= %s\n", n, to_string(r.n).c_str(),
                    to_string(r.p).c_str(),
                    decimal_string(abs_of(r.certified_error).hi).c_str());
    }

    std::printf("\none denominator against sqrt2 and sqrt3 at once (N=50)\n");
    MultiApproxResult joint = simultaneous_approx(
        {root2, RealOracle::sqrt_of(BigInt(3))}, BigInt(50));
    std::printf("  n=%s p=(%s, %s), both errors under %s\n", to_string(joint.n[0]).c_str(),
                to_string(joint.p[0]).c_str(), to_string(joint.p[1]).c_str(),
                to_string(joint.error_bound).c_str());

    std::printf("\nstream of certified fractions with |sqrt2 - p/q| < 1/q^2\n");
    ApproxStream stream(root2);
    for (int i = 0; i < 8; ++i) {
        ApproxStream::Item item = stream.next();
        std::printf("  %-12s err %s\n", to_string(item.fraction).c_str(),
                    decimal_string(abs_of(item.certified_error).hi).c_str());
    }

    std::printf("\nwitness pair with |x*sqrt2 - y| < 10^-6\n");
    IrrationalityWitness w = find_witness(root2, ExactRational(1, 1000000));
    std::printf("  x=%s y=%s value in [%s, %s]\n", to_string(w.x).c_str(),
                to_string(w.y).c_str(), decimal_string(w.certified_value.lo, 14).c_str(),
                decimal_string(w.certified_value.hi, 14).c_str());
    return 0;
}
