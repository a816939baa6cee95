#include "kodbundle/corpus.hpp"

#include <random>

namespace kodbundle {

namespace {

// mt19937_64 output is pinned by the standard; std::uniform_int_distribution
// is not, so draws go through plain modulo for cross-platform determinism
long draw(std::mt19937_64& rng, long n) { return static_cast<long>(rng() % static_cast<std::uint64_t>(n)); }

Lattice2 pick_lattice(std::mt19937_64& rng, long D) {
    QuadInt one = QuadInt::one(D);
    QuadInt w(Rational(0), Rational(1), D);
    switch (draw(rng, 4)) {
        case 0: return Lattice2(one, w);
        case 1: return Lattice2(one, w * Rational(2));
        case 2: return Lattice2(one * Rational(2), w);
        default: return Lattice2(one, w * Rational(3));
    }
}

// small elements of Hom(B, E) with their degrees
struct HomChoice {
    QuadInt lambda;
    Int deg;
};

std::vector<HomChoice> hom_choices(const HomLattice& H) {
    std::vector<HomChoice> out;
    for (long x = -3; x <= 3; ++x) {
        for (long y = -3; y <= 3; ++y) {
            if (x == 0 && y == 0) continue;
            QuadInt lambda = H.element(Int(x), Int(y));
            Rational deg = H.degree_of(lambda);
            out.push_back({lambda, numerator(deg)});
        }
    }
    return out;
}

}  // namespace

std::vector<ChernInstance> generate_corpus(const CorpusOptions& opt) {
    if (opt.max_r < 2) throw std::invalid_argument("generate_corpus: max_r must be >= 2");
    std::mt19937_64 rng(opt.seed);
    const long Ds[4] = {1, 2, 3, 7};

    std::vector<ChernInstance> out;
    out.reserve(static_cast<size_t>(opt.count));
    for (int i = 0; i < opt.count; ++i) {
        int stratum = i % 4;  // 0: delta<0, 1: d=r, 2: 1<d<r, 3: d=1
        long D = Ds[draw(rng, 4)];
        CurveModel B{pick_lattice(rng, D), "B"};
        CurveModel E{pick_lattice(rng, D), "E"};
        Int n(1 + draw(rng, 5));
        KodairaSurface X{B, E, n};

        HomLattice H = hom_lattice(B.lattice, E.lattice);
        std::vector<HomChoice> choices = hom_choices(H);

        long r = 2 + draw(rng, opt.max_r - 1);
        QuadInt lambda = QuadInt::zero(D);

        if (stratum == 2) {
            // needs composite r with a strictly intermediate gcd
            if (opt.max_r >= 6 && draw(rng, 2) == 0) r = 6;
            else if (opt.max_r >= 4) r = 4;
            else stratum = 3;
        }

        std::vector<HomChoice> fit;
        for (const auto& c : choices) {
            Int g = boost::multiprecision::gcd(Int(r), c.deg);
            bool want = (stratum == 0) ? true
                      : (stratum == 1) ? (g == r)
                      : (stratum == 2) ? (g > 1 && g < r)
                                       : (g == 1);
            if (want) fit.push_back(c);
        }

        if (stratum == 1 && draw(rng, 2) == 0) {
            // torsion-only c1 also routes to the deformation case
            fit.clear();
        }
        if (fit.empty() && stratum != 1) {
            if (stratum == 2) {
                // no intermediate gcd available for these curves: fall back
                // to the d = 1 stratum so every instance stays well-formed
                stratum = 3;
                for (const auto& c : choices)
                    if (boost::multiprecision::gcd(Int(r), c.deg) == 1) fit.push_back(c);
            }
            if (fit.empty() && stratum == 3) {
                // gcd 1 always holds for degree-1 maps; enlarge the net
                for (const auto& c : choices)
                    if (boost::multiprecision::gcd(Int(r), c.deg) == 1) fit.push_back(c);
            }
        }
        if (!fit.empty()) lambda = fit[static_cast<size_t>(draw(rng, static_cast<long>(fit.size())))].lambda;
        if (stratum == 3 && lambda.is_zero()) {
            // d = 1 needs a nonzero free part; retry this slot as d = r
            stratum = 1;
        }

        Int deg = lambda.is_zero() ? Int(0) : numerator(H.degree_of(lambda));
        // R = r c2 + (r-1) deg; pick c2 by stratum sign
        Int base_c2 = -floor_div(Int(r - 1) * deg, Int(r));
        Int c2;
        if (stratum == 0) {
            c2 = base_c2 - 1 - draw(rng, 8);  // R < 0
        } else {
            c2 = base_c2 + draw(rng, 8);
            // ensure R >= 0 (ceil behaviour of the negated floor_div)
            if (Int(r) * c2 + Int(r - 1) * deg < 0) c2 += 1;
        }

        NSClass c1{lambda, Int(draw(rng, static_cast<long>(n)))};
        out.push_back(ChernInstance{X, Int(r), c1, c2});
    }
    return out;
}

}  // namespace kodbundle
