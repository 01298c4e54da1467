// one PASS/FAIL line per acceptance criterion
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run one criterion
//
// exit status: 0 when every criterion that ran matches its pinned expectation.
// Criteria 5, 6 and 7 are pinned as failing: the computed answers contradict the
// targets (see README). They still print FAIL. A pinned criterion matches only when
// exactly the documented checks fail; a PASS there, or any other failure, is a mismatch.

#include "hplane/suites.hpp"

#include <chrono>
#include <cstring>
#include <iostream>
#include <map>
#include <set>

using namespace hplane;

namespace {

constexpr uint64_t kSeed = 42;
constexpr double kTol = 1e-9;          // numeric residuals and eigenvalue threshold
constexpr long kRelationPairs = 500;   // criterion 1
constexpr long kInvolutionSamples = 300;
constexpr long kUnitaryPos = 500, kUnitaryNeg = 500, kDieudonne = 300;
constexpr long kSl2Pairs = 200;
constexpr long kCompletions = 200;
constexpr long kCensusHeight = 5;
constexpr long kDomainSamples = 100;   // per plane and real place
constexpr long kModuliSamples = 200;

// criterion -> names of the checks that fail for documented reasons
const std::map<int, std::set<std::string>> kPinned{
    {5, {"integral isotropic completion d1:-7"}},
    {6, {"isotropic census -20 height 5"}},
    {7, {"inv_pbar = -1/3", "inv_p + inv_pbar = 0 mod 1", "inv_q = 0 (gamma a unit at q)",
         "Landherr involution exists"}},
};

struct Outcome {
    bool pass = true;
    std::string note;
    std::set<std::string> failed;
    void take(const Check& c)
    {
        if (!c.pass) {
            pass = false;
            failed.insert(c.name);
            note += (note.empty() ? "" : "; ") + c.name;
        }
    }
};

bool all_of(const std::vector<Check>& cs, Outcome& o)
{
    for (auto& c : cs)
        o.take(c);
    return o.pass;
}

Outcome c1()
{
    Outcome o;
    Sampler S(kSeed);
    o.take(check_cyclic_relations(example7_algebra(), S, kRelationPairs));
    o.take(check_cyclic_relations(plane_quaternion(2, 3).A, S, kRelationPairs));
    return o;
}

Outcome c2()
{
    Outcome o;
    Sampler S(kSeed);
    for (auto& P : test_planes())
        o.take(check_involution_axioms(P, S, kInvolutionSamples));
    return o;
}

Outcome c3()
{
    Outcome o;
    Sampler S(kSeed);
    for (auto& P : test_planes()) {
        o.take(check_unitary_membership(P, S, kUnitaryPos, kUnitaryNeg));
        o.take(check_dieudonne(P, S, kDieudonne));
    }
    return o;
}

Outcome c4()
{
    Outcome o;
    Sampler S(kSeed);
    o.take(check_sl2_isomorphism(plane_d1(-7), S, kSl2Pairs));
    o.take(check_sl2_isomorphism(plane_d1_zeta8(), S, kSl2Pairs));
    return o;
}

Outcome c5()
{
    Outcome o;
    Sampler S(kSeed);
    auto c = check_integral_completion(plane_d1(-7), S, kCompletions);
    o.take(c);
    o.note += " " + c.detail["determinants"].dump();
    // only the determinant may be off: unitary, integral and bottom row must hold for every sample
    auto& d = c.detail;
    bool rest = d["unitary"] == kCompletions && d["integral"] == kCompletions && d["bottom row"] == kCompletions;
    o.take({"completion unitary, integral, bottom row", "claimed", rest, {}});
    return o;
}

Outcome c6()
{
    Outcome o;
    o.take(check_class_number(-7, 1, "claimed"));
    o.take(check_class_number(-23, 3, "derived"));
    o.take(check_class_number(-20, 2, "derived"));
    o.take(check_class_number(-163, 1, "derived"));
    auto cen = check_cusp_census(-20, kCensusHeight, 2);
    o.take(cen);
    o.note += " classes=" + std::to_string(cen.detail["per_class"].size());
    return o;
}

Outcome c7()
{
    Outcome o;
    all_of(example7_checks(3), o);
    return o;
}

Outcome c8()
{
    Outcome o;
    for (auto& P : test_planes())
        o.take(check_signatures(P, kTol));
    return o;
}

Outcome c9()
{
    Outcome o;
    Sampler S(kSeed);
    for (auto& P : test_planes()) {
        all_of(check_domain_actions(P, S, kDomainSamples, kTol), o);
        o.take(check_base_point(P, S, kDomainSamples, kTol));
    }
    return o;
}

Outcome c10()
{
    // the d^2 count is a statement about involutions of the second kind
    Outcome o;
    for (auto& P : test_planes())
        if (P.J->spec.kind == InvolutionKind::Second)
            o.take(check_unipotent_dimensions(P));
    return o;
}

Outcome c11()
{
    Outcome o;
    Sampler S(kSeed);
    auto planes = test_planes();
    o.take(check_riemann_form(planes[0], TCase::D1, S, kModuliSamples));
    o.take(check_riemann_form(planes[2], TCase::D2a, S, kModuliSamples));
    o.take(check_riemann_form(planes[2], TCase::D2b, S, kModuliSamples));
    o.take(check_riemann_form(planes[3], TCase::DGe3, S, kModuliSamples));
    o.take(check_gram_d1(-7));
    o.take(check_split_d2());
    o.take(check_split_d3());
    return o;
}

struct Criterion {
    const char* title;
    Outcome (*run)();
    double limit_s; // 0: no runtime limit
};

const Criterion kCriteria[] = {
    {"cyclic-algebra relations", c1, 10},
    {"involution axioms", c2, 10},
    {"unitary membership and Dieudonne determinant", c3, 0},
    {"SL2(k) isomorphism", c4, 0},
    {"integral isotropic completion over Q(sqrt -7)", c5, 0},
    {"class numbers and cusp census over Q(sqrt -5)", c6, 60},
    {"degree-3 example certificate", c7, 5},
    {"signature (d,d) at real places", c8, 0},
    {"tube domain actions", c9, 0},
    {"unipotent radical dimension", c10, 0},
    {"Riemann forms and lattice splittings", c11, 0},
};

bool run_one(int n)
{
    auto& c = kCriteria[n - 1];
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o.pass = false;
        o.note = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && secs >= c.limit_s) {
        o.pass = false;
        o.note += (o.note.empty() ? "" : "; ") + std::string("over time limit");
    }
    auto pin = kPinned.find(n);
    bool expected_fail = pin != kPinned.end();
    bool matches = expected_fail ? !o.pass && o.failed == pin->second : o.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%.2f s", secs);
    std::cout << "criterion " << n << " " << (o.pass ? "PASS" : "FAIL") << ": " << c.title << " (" << t << ")";
    if (!o.note.empty())
        std::cout << " [" << o.note << "]";
    if (expected_fail)
        std::cout << (matches ? " (pinned failure)" : " (does not match the pinned failure)");
    std::cout << "\n";
    return matches;
}

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }
    int total = int(std::size(kCriteria));
    if (only < 0 || only > total) {
        std::cerr << "criterion must be 1.." << total << "\n";
        return 2;
    }
    bool ok = true;
    for (int n = 1; n <= total; ++n)
        if (!only || only == n)
            ok = run_one(n) && ok;
    return ok ? 0 : 1;
}
