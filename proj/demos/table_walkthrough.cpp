// Prints the projective table for a few fixture pairs and the k*g sweep over
// pi_11(S^6) = Z.

#include <iostream>
#include <vector>

#include "nielsen/classifier.hpp"
#include "nielsen/database.hpp"
#include "nielsen/render.hpp"
#include "nielsen/selfcoincidence.hpp"

using namespace nielsen;

int main(int argc, char** argv) {
  const Database db = Database::load(argc > 1 ? argv[1] : NIELSEN_DEFAULT_DB);
  std::cout << "database " << db.version() << "\n\n";

  struct Pair {
    Field k;
    int m, nprime;
    long a, b;
  };
  const std::vector<Pair> pairs{{Field::R, 11, 6, 2, 2}, {Field::R, 11, 6, 1, 1}, {Field::R, 2, 2, 1, 1},
                                {Field::R, 2, 2, 3, 1},  {Field::R, 11, 6, 1, 0}, {Field::C, 5, 2, 1, 1},
                                {Field::C, 5, 2, 1, 0}};
  for (const auto& p : pairs) {
    auto f1 = make_projective_class(db, p.k, p.m, p.nprime, {p.a});
    auto f2 = make_projective_class(db, p.k, p.m, p.nprime, {p.b});
    std::cout << ProjectiveSlice(db, p.k, p.m, p.nprime).describe() << ", lifts " << p.a << " and " << p.b << "\n";
    std::cout << render(classify_projective(db, f1, f2), OutputMode::Text) << "\n";
  }

  std::cout << "self-coincidences of k*w6 in pi_11(S^6):\n";
  const FgAbGroup z = FgAbGroup::free(1);
  for (long k = 0; k <= 4; ++k) {
    auto v = self_verdict(db, Field::R, 11, 6, GroupElement(z, {k}));
    std::cout << "k=" << k << "\n" << render(v, OutputMode::Text);
  }
}
