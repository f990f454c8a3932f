#include "weylcheck/catalog.hpp"

namespace weyl {

namespace {

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> v;

  v.push_back({"euclidean2",
               "flat plane; the baseline structure every residual should vanish on",
               R"cfg([chart]
dim = 2
coords = ["x1", "x2"]
box = [[-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "1"]

[run]
tasks = ["einstein-weyl", "faraday"]
)cfg",
               {{"einstein-weyl", "pass"}, {"faraday", "report-only"}}});

  v.push_back({"euclidean3",
               "flat three-space with a zero Lee form",
               R"cfg([chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "0", "1", "0", "1"]

[run]
tasks = ["einstein-weyl", "faraday"]
)cfg",
               {{"einstein-weyl", "pass"}, {"faraday", "report-only"}}});

  v.push_back({"euclidean4",
               "flat four-space; both conformal curvature halves vanish",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[run]
tasks = ["einstein-weyl", "selfdual", "faraday"]
)cfg",
               {{"einstein-weyl", "pass"}, {"selfdual", "pass"}, {"faraday", "report-only"}}});

  v.push_back({"constant_curvature3",
               "round three-sphere chart with the constant gauge function k = 2",
               R"cfg([chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-0.9, 0.9], [-0.9, 0.9], [-0.9, 0.9]]

[metric]
upper = ["4/(1+x1^2+x2^2+x3^2)^2", "0", "0", "4/(1+x1^2+x2^2+x3^2)^2", "0", "4/(1+x1^2+x2^2+x3^2)^2"]

[weyl]
k = "2"

[run]
tasks = ["einstein-weyl", "gauduchon-tod", "gt-flatness"]
)cfg",
               {{"einstein-weyl", "pass"}, {"gauduchon-tod", "pass"}, {"gt-flatness", "pass"}}});

  v.push_back({"constant_curvature4",
               "round four-sphere chart; conformally flat, so both halves vanish",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-0.9, 0.9], [-0.9, 0.9], [-0.9, 0.9], [-0.9, 0.9]]

[metric]
upper = ["4/(1+x1^2+x2^2+x3^2+x4^2)^2", "0", "0", "0", "4/(1+x1^2+x2^2+x3^2+x4^2)^2", "0", "0", "4/(1+x1^2+x2^2+x3^2+x4^2)^2", "0", "4/(1+x1^2+x2^2+x3^2+x4^2)^2"]

[run]
tasks = ["einstein-weyl", "selfdual"]
)cfg",
               {{"einstein-weyl", "pass"}, {"selfdual", "pass"}}});

  v.push_back({"flat_with_parallel_lee",
               "flat metric with a constant closed Lee form; the symmetrised Ricci "
               "picks up a rank-one part, so the Einstein condition fails",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[lee_form]
components = ["0.3", "0", "0", "0"]

[run]
tasks = ["einstein-weyl", "faraday"]
)cfg",
               {{"einstein-weyl", "fail"}, {"faraday", "report-only"}}});

  v.push_back({"flat_nonclosed_lee",
               "flat metric with a Lee form whose curl is nonzero; the Faraday "
               "report shows the curl size",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[lee_form]
components = ["x2", "0", "0", "0"]

[run]
tasks = ["einstein-weyl", "faraday"]
)cfg",
               {{"einstein-weyl", "fail"}, {"faraday", "report-only"}}});

  v.push_back({"product_3to2",
               "coordinate projection of flat three-space onto the plane; every "
               "fibration residual vanishes",
               R"cfg([chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "0", "1", "0", "1"]

[map]
components = ["x1", "x2"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[-1.0, 1.0], [-1.0, 1.0]]
metric = ["1", "0", "1"]

[run]
tasks = ["harmonic", "conformal", "morphism", "fibres", "codomain-lee", "twistorial", "ricci-horizontal"]
)cfg",
               {{"harmonic", "pass"},
                {"conformal", "pass"},
                {"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"twistorial", "pass"},
                {"ricci-horizontal", "pass"}}});

  v.push_back({"stretched_3to2",
               "projection from a metric stretched along the fibre direction; the "
               "fibres stop being geodesic and harmonicity fails with them",
               R"cfg([chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[-0.8, 0.8], [-0.8, 0.8], [-0.8, 0.8]]

[metric]
upper = ["1", "0", "0", "1", "0", "1+0.5*x1"]

[map]
components = ["x1", "x2"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[-1.0, 1.0], [-1.0, 1.0]]
metric = ["1", "0", "1"]

[run]
tasks = ["harmonic", "conformal", "morphism", "fibres", "codomain-lee", "twistorial", "ricci-horizontal"]
)cfg",
               {{"harmonic", "fail"},
                {"conformal", "pass"},
                {"morphism", "fail"},
                {"fibres", "pass"},
                {"codomain-lee", "fail"},
                {"twistorial", "fail"},
                {"ricci-horizontal", "fail"}}});

  v.push_back({"product_4to3",
               "coordinate projection of flat four-space onto flat three-space",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[map]
components = ["x1", "x2", "x3"]

[weyl.codomain]
dim = 3
coords = ["y1", "y2", "y3"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]
metric = ["1", "0", "0", "1", "0", "1"]

[run]
tasks = ["einstein-weyl", "selfdual", "harmonic", "conformal", "morphism", "fibres", "codomain-lee", "twistorial", "leesplit", "ksection", "ricci-horizontal", "ricci-pullback", "nullricci"]
)cfg",
               {{"einstein-weyl", "pass"},
                {"selfdual", "pass"},
                {"harmonic", "pass"},
                {"conformal", "pass"},
                {"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"twistorial", "pass"},
                {"leesplit", "pass"},
                {"ksection", "pass"},
                {"ricci-horizontal", "pass"},
                {"ricci-pullback", "pass"},
                {"nullricci", "pass"}}});

  v.push_back({"s2xr2_4to2",
               "round sphere times flat plane projected onto the sphere factor, "
               "with the product rotation declared",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-0.8, 0.8], [-0.8, 0.8], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["4/(1+x1^2+x2^2)^2", "0", "0", "0", "4/(1+x1^2+x2^2)^2", "0", "0", "1", "0", "1"]

[map]
components = ["x1", "x2"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[-1.0, 1.0], [-1.0, 1.0]]
metric = ["4/(1+y1^2+y2^2)^2", "0", "4/(1+y1^2+y2^2)^2"]

[complex_structure]
entries = ["0", "-1", "0", "0", "1", "0", "0", "0", "0", "0", "0", "-1", "0", "0", "1", "0"]

[run]
tasks = ["morphism", "fibres", "codomain-lee", "holomorphic", "parallel", "twistorial", "hermitian", "integrable", "ricci-horizontal"]
)cfg",
               {{"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"holomorphic", "pass"},
                {"parallel", "pass"},
                {"twistorial", "pass"},
                {"hermitian", "pass"},
                {"integrable", "pass"},
                {"ricci-horizontal", "pass"}}});

  v.push_back({"gibbons_hawking",
               "monopole-type fibration over flat three-space: the bundle metric "
               "built from the harmonic potential 1 + x1 with connection form "
               "x2 dx3, projected onto the base",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.5, 1.5], [0.5, 1.5], [0.5, 1.5], [0.5, 1.5]]

[metric]
upper = ["1+x1", "0", "0", "0", "1+x1", "0", "0", "1+x1+x2^2/(1+x1)", "x2/(1+x1)", "1/(1+x1)"]

[map]
components = ["x1", "x2", "x3"]

[weyl.codomain]
dim = 3
coords = ["y1", "y2", "y3"]
box = [[0.4, 1.6], [0.4, 1.6], [0.4, 1.6]]
metric = ["1", "0", "0", "1", "0", "1"]

[run]
tasks = ["einstein-weyl", "selfdual", "faraday", "harmonic", "conformal", "morphism", "fibres", "codomain-lee", "twistorial", "leesplit", "ksection", "ricci-pullback", "nullricci"]
)cfg",
               {{"einstein-weyl", "pass"},
                {"selfdual", "pass"},
                {"faraday", "report-only"},
                {"harmonic", "pass"},
                {"conformal", "pass"},
                {"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"twistorial", "pass"},
                {"leesplit", "pass"},
                {"ksection", "pass"},
                {"ricci-pullback", "pass"},
                {"nullricci", "pass"}}});

  v.push_back({"gh_vertical_lee",
               "monopole fibration with a Lee form proportional to the fibre "
               "direction; the fibration identities survive with a nonzero gauge "
               "function while the Einstein condition breaks",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.5, 1.5], [0.5, 1.5], [0.5, 1.5], [0.5, 1.5]]

[metric]
upper = ["1+x1", "0", "0", "0", "1+x1", "0", "0", "1+x1+x2^2/(1+x1)", "x2/(1+x1)", "1/(1+x1)"]

[lee_form]
components = ["0", "0", "0.3*x2/sqrt(1+x1)", "0.3/sqrt(1+x1)"]

[map]
components = ["x1", "x2", "x3"]

[weyl.codomain]
dim = 3
coords = ["y1", "y2", "y3"]
box = [[0.4, 1.6], [0.4, 1.6], [0.4, 1.6]]
metric = ["1", "0", "0", "1", "0", "1"]

[run]
tasks = ["einstein-weyl", "morphism", "fibres", "codomain-lee", "twistorial", "leesplit", "ksection", "ricci-pullback", "nullricci"]
)cfg",
               {{"einstein-weyl", "fail"},
                {"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"twistorial", "pass"},
                {"leesplit", "pass"},
                {"ksection", "pass"},
                {"ricci-pullback", "pass"},
                {"nullricci", "pass"}}});

  v.push_back({"gh_perturbed_lee",
               "monopole fibration with a horizontal Lee form that is not induced "
               "by any gauge; harmonicity and the gauge-function extraction break "
               "while the metric-level twistoriality residual is untouched",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.5, 1.5], [0.5, 1.5], [0.5, 1.5], [0.5, 1.5]]

[metric]
upper = ["1+x1", "0", "0", "0", "1+x1", "0", "0", "1+x1+x2^2/(1+x1)", "x2/(1+x1)", "1/(1+x1)"]

[lee_form]
components = ["0", "0.2", "0", "0"]

[map]
components = ["x1", "x2", "x3"]

[weyl.codomain]
dim = 3
coords = ["y1", "y2", "y3"]
box = [[0.4, 1.6], [0.4, 1.6], [0.4, 1.6]]
metric = ["1", "0", "0", "1", "0", "1"]

[run]
tasks = ["harmonic", "twistorial", "leesplit", "ksection"]
)cfg",
               {{"harmonic", "fail"},
                {"twistorial", "pass"},
                {"leesplit", "fail"},
                {"ksection", "fail"}}});

  v.push_back({"gh_to_c",
               "monopole metric projected onto two base coordinates, with its "
               "parallel complex structure declared; a holomorphic harmonic "
               "morphism onto the flat plane",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.5, 1.5], [0.5, 1.5], [0.5, 1.5], [0.5, 1.5]]

[metric]
upper = ["1+x1", "0", "0", "0", "1+x1", "0", "0", "1+x1+x2^2/(1+x1)", "x2/(1+x1)", "1/(1+x1)"]

[map]
components = ["x2", "x3"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[0.4, 1.6], [0.4, 1.6]]
metric = ["1", "0", "1"]

[complex_structure]
entries = ["0", "0", "x2/(1+x1)", "1/(1+x1)", "0", "0", "-1", "0", "0", "1", "0", "0", "-(1+x1)", "-x2", "0", "0"]

[run]
tasks = ["harmonic", "conformal", "morphism", "fibres", "codomain-lee", "holomorphic", "hermitian", "integrable", "parallel", "twistorial"]
)cfg",
               {{"harmonic", "pass"},
                {"conformal", "pass"},
                {"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"holomorphic", "pass"},
                {"hermitian", "pass"},
                {"integrable", "pass"},
                {"parallel", "pass"},
                {"twistorial", "pass"}}});

  v.push_back({"killing_rotation",
               "distance to a rotation axis in flat four-space, mapped to a "
               "codomain whose Lee form makes the map harmonic; the fibration "
               "identities hold while every twistoriality route fails",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.3, 1.2], [0.3, 1.2], [0.3, 1.2], [0.3, 1.2]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[map]
components = ["sqrt(x1^2+x2^2)", "x3", "x4"]

[weyl.codomain]
dim = 3
coords = ["y1", "y2", "y3"]
box = [[0.3, 1.8], [0.3, 1.2], [0.3, 1.2]]
metric = ["1", "0", "0", "1", "0", "1"]
lee = ["1/y1", "0", "0"]

[run]
tasks = ["harmonic", "conformal", "morphism", "fibres", "codomain-lee", "twistorial", "leesplit", "ksection", "ricci-pullback", "nullricci"]
)cfg",
               {{"harmonic", "pass"},
                {"conformal", "pass"},
                {"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"twistorial", "fail"},
                {"leesplit", "fail"},
                {"ksection", "fail"},
                {"ricci-pullback", "fail"},
                {"nullricci", "pass"}}});

  v.push_back({"hopf_type",
               "quadratic polynomial fibration of flat four-space over flat "
               "three-space; harmonic with circular, non-minimal fibres",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.3, 1.0], [0.3, 1.0], [0.3, 1.0], [0.3, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[map]
components = ["x1^2+x2^2-x3^2-x4^2", "2*(x1*x3-x2*x4)", "2*(x1*x4+x2*x3)"]

[weyl.codomain]
dim = 3
coords = ["y1", "y2", "y3"]
box = [[-2.0, 2.0], [-2.0, 2.0], [-2.0, 2.0]]
metric = ["1", "0", "0", "1", "0", "1"]

[run]
tasks = ["harmonic", "conformal", "morphism", "fibres", "codomain-lee", "twistorial", "leesplit", "ksection", "ricci-pullback", "nullricci"]
)cfg",
               {{"harmonic", "pass"},
                {"conformal", "pass"},
                {"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"twistorial", "pass"},
                {"leesplit", "pass"},
                {"ksection", "pass"},
                {"ricci-pullback", "pass"},
                {"nullricci", "pass"}}});

  v.push_back({"z1z2",
               "product of the two complex coordinates on flat complex two-space; "
               "holomorphic for the standard structures and twistorial in the "
               "declared orientation",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.2, 1.0], [0.2, 1.0], [0.2, 1.0], [0.2, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[map]
components = ["x1*x3-x2*x4", "x1*x4+x2*x3"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]
metric = ["1", "0", "1"]

[complex_structure]
entries = ["0", "-1", "0", "0", "1", "0", "0", "0", "0", "0", "0", "-1", "0", "0", "1", "0"]

[run]
tasks = ["morphism", "fibres", "codomain-lee", "twistorial", "parallel", "holomorphic", "hermitian", "integrable"]
)cfg",
               {{"morphism", "pass"},
                {"fibres", "pass"},
                {"codomain-lee", "pass"},
                {"twistorial", "pass"},
                {"parallel", "pass"},
                {"holomorphic", "pass"},
                {"hermitian", "pass"},
                {"integrable", "pass"}}});

  v.push_back({"zbar_product",
               "conjugate-linear analogue of the coordinate product; still a "
               "harmonic morphism, but matched to the opposite orientation, so "
               "the declared-orientation twistoriality and holomorphy both fail",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.2, 1.0], [0.2, 1.0], [0.2, 1.0], [0.2, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[map]
components = ["x1*x3+x2*x4", "x1*x4-x2*x3"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]
metric = ["1", "0", "1"]

[complex_structure]
entries = ["0", "-1", "0", "0", "1", "0", "0", "0", "0", "0", "0", "-1", "0", "0", "1", "0"]

[run]
tasks = ["morphism", "integrable", "hermitian", "parallel", "twistorial", "holomorphic"]
)cfg",
               {{"morphism", "pass"},
                {"integrable", "pass"},
                {"hermitian", "pass"},
                {"parallel", "pass"},
                {"twistorial", "fail"},
                {"holomorphic", "fail"}}});

  v.push_back({"twisted_J",
               "coordinate-rotated compatible structure on a flat metric with a "
               "parallel Lee form: a Weyl connection balancing the structure "
               "exists even though the structure is not integrable",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]]

[metric]
upper = ["1", "0", "0", "0", "1", "0", "0", "1", "0", "1"]

[lee_form]
components = ["0.3", "0", "0", "0"]

[map]
components = ["x1", "x2"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[-1.0, 1.0], [-1.0, 1.0]]
metric = ["1", "0", "1"]

[complex_structure]
entries = ["0", "-cos(x3)", "-sin(x3)", "0", "cos(x3)", "0", "0", "sin(x3)", "sin(x3)", "0", "0", "-cos(x3)", "0", "-sin(x3)", "cos(x3)", "0"]

[run]
tasks = ["hermitian", "integrable", "conformal", "morphism", "parallel", "twistorial"]
)cfg",
               {{"hermitian", "pass"},
                {"integrable", "fail"},
                {"conformal", "pass"},
                {"morphism", "fail"},
                {"parallel", "pass"},
                {"twistorial", "pass"}}});

  v.push_back({"hermitian_conformal",
               "conformally flat gauge with the matching exact Lee form: the same "
               "Weyl structure as the flat one, so every verdict is gauge-stable",
               R"cfg([chart]
dim = 4
coords = ["x1", "x2", "x3", "x4"]
box = [[0.2, 1.0], [0.2, 1.0], [0.2, 1.0], [0.2, 1.0]]

[metric]
upper = ["exp(0.4*x1)", "0", "0", "0", "exp(0.4*x1)", "0", "0", "exp(0.4*x1)", "0", "exp(0.4*x1)"]

[lee_form]
components = ["-0.2", "0", "0", "0"]

[map]
components = ["x1*x3-x2*x4", "x1*x4+x2*x3"]

[weyl.codomain]
dim = 2
coords = ["y1", "y2"]
box = [[-2.0, 2.0], [-2.0, 2.0]]
metric = ["1", "0", "1"]

[complex_structure]
entries = ["0", "-1", "0", "0", "1", "0", "0", "0", "0", "0", "0", "-1", "0", "0", "1", "0"]

[run]
tasks = ["hermitian", "integrable", "morphism", "holomorphic", "selfdual"]
)cfg",
               {{"hermitian", "pass"},
                {"integrable", "pass"},
                {"morphism", "pass"},
                {"holomorphic", "pass"},
                {"selfdual", "pass"}}});

  v.push_back({"radial_r",
               "distance from the origin as a real-valued map; horizontally "
               "conformal but not harmonic",
               R"cfg([chart]
dim = 3
coords = ["x1", "x2", "x3"]
box = [[0.4, 1.1], [0.4, 1.1], [0.4, 1.1]]

[metric]
upper = ["1", "0", "0", "1", "0", "1"]

[map]
components = ["sqrt(x1^2+x2^2+x3^2)"]

[weyl.codomain]
dim = 1
coords = ["r"]
box = [[0.3, 2.0]]
metric = ["1"]

[run]
tasks = ["conformal", "harmonic", "morphism"]
)cfg",
               {{"conformal", "pass"}, {"harmonic", "fail"}, {"morphism", "fail"}}});

  return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry* catalog_find(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace weyl
