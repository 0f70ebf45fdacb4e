// Acceptance gate: runs the CLI verification suite and maps its checks onto
// the eleven acceptance criteria, printing one line per criterion. Exits
// nonzero when any criterion fails. Usage: acceptance_tests <path-to-cli>.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

static std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static int run(const std::string &cmd) { return std::system(cmd.c_str()); }

int main(int argc, char **argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <cli-binary>\n", argv[0]);
    return 2;
  }
  std::string cli = argv[1];
  fs::path work = fs::temp_directory_path() / "pilab-acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  // Full run: every check enabled.
  std::string full_dir = (work / "full").string();
  int rc_full = run("'" + cli + "' verify-suite --max-degree 8 --out '" +
                    full_dir + "' > '" + (work / "full.log").string() +
                    "' 2>&1");

  std::map<std::string, std::string> status; // check name -> status
  bool parsed = false;
  if (fs::exists(fs::path(full_dir) / "verify.json")) {
    auto j = nlohmann::json::parse(read_file(fs::path(full_dir) /
                                             "verify.json"),
                                   nullptr, false);
    if (!j.is_discarded()) {
      for (auto &c : j["checks"])
        status[c["name"].get<std::string>()] = c["status"].get<std::string>();
      parsed = true;
    }
  }

  auto all_pass = [&](const std::vector<std::string> &names) {
    if (!parsed)
      return false;
    for (auto &n : names) {
      auto it = status.find(n);
      if (it == status.end() || it->second != "pass")
        return false;
    }
    return true;
  };

  struct Criterion {
    int id;
    const char *what;
    bool ok;
  };
  std::vector<Criterion> cs;
  cs.push_back({1, "Grassmann kernel exhaustive, k <= 5",
                all_pass({"grassmann-kernel"})});
  cs.push_back({2, "envelope isomorphism, k = 1..3",
                all_pass({"envelope-iso-k1", "envelope-iso-k2",
                          "envelope-iso-k3"})});
  cs.push_back({3, "proper identities of UT2(G^(2m)), UT2(G^(2m+1)), m = 1, 2",
                all_pass({"triple-commutator-product-m1-k2",
                          "pair-product-m1-k2",
                          "triple-commutator-product-m1-k3",
                          "pair-product-m1-k3",
                          "triple-commutator-product-m2-k4",
                          "pair-product-m2-k4",
                          "triple-commutator-product-m2-k5",
                          "pair-product-m2-k5"})});
  cs.push_back({4, "consequence certificates, items (1)-(4), t = 1, 2",
                all_pass({"consequence-cert-item1-t1",
                          "consequence-cert-item1-t2",
                          "consequence-cert-item2-t1",
                          "consequence-cert-item2-t2",
                          "consequence-cert-item3-t1",
                          "consequence-cert-item3-t2",
                          "consequence-cert-item4-t1",
                          "consequence-cert-item4-t2"})});
  cs.push_back({5, "generator span equals identity subspace, n = 4, 5, 6",
                all_pass({"Tm-equals-identities-n4", "Tm-equals-identities-n5",
                          "Tm-equals-identities-n6"})});
  cs.push_back({6, "family substitutions and independence, degrees 4 and 6",
                all_pass({"pol3-isolation-deg4", "pol3-isolation-deg6",
                          "pol1-independence-deg4",
                          "pol1-independence-deg6"})});
  cs.push_back({7, "Grassmann codimensions, n <= 6",
                all_pass({"codim-grassmann", "codim-g2-vs-g3"})});
  cs.push_back({8, "reordering certificates, 20 shaped inputs",
                all_pass({"reordering-certificates"})});
  cs.push_back({9, "bounded generic-model identities, D = 2, plus control",
                all_pass({"relfree-identity-1", "relfree-identity-2",
                          "relfree-identity-3", "relfree-identity-4",
                          "relfree-negative-control", "tideal-separation-k2",
                          "tideal-separation-k3"})});
  cs.push_back({10, "direct vs generic-model cross-check",
                all_pass({"cross-check-ut2-k-n3", "cross-check-g2-n4"})});

  // Determinism: two reduced runs, same seed, byte-identical bundles.
  std::string da = (work / "det-a").string(), db = (work / "det-b").string();
  int rc_a = run("'" + cli + "' verify-suite --max-degree 4 --seed 7 --out '" +
                 da + "' > /dev/null 2>&1");
  int rc_b = run("'" + cli + "' verify-suite --max-degree 4 --seed 7 --out '" +
                 db + "' > /dev/null 2>&1");
  std::string ba = read_file(fs::path(da) / "verify.json");
  std::string bb = read_file(fs::path(db) / "verify.json");
  cs.push_back({11, "identical seeds give byte-identical bundles",
                rc_a == 0 && rc_b == 0 && !ba.empty() && ba == bb});

  bool ok = rc_full == 0;
  for (auto &c : cs) {
    std::printf("criterion %2d: %s - %s\n", c.id, c.ok ? "PASS" : "FAIL",
                c.what);
    ok = ok && c.ok;
  }
  if (rc_full != 0)
    std::printf("verification suite exited with status %d\n", rc_full);
  return ok ? 0 : 1;
}
