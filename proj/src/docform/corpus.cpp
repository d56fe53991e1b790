#include "fc/docform/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fc::docform {

extern const char* const kBuiltinTheoryText;

const std::string& builtin_theory_text() {
  static const std::string text = kBuiltinTheoryText;
  return text;
}

const TheorySpec& builtin_theory() {
  static const TheorySpec spec = parse_theory(builtin_theory_text());
  return spec;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TheorySpec load_theory(const std::filesystem::path& path) { return parse_theory(read_file(path)); }

TheoryResolver resolver_for(std::span<const TheorySpec> theories) {
  std::vector<std::pair<TheoryId, const TheorySpec*>> table;
  for (const auto& t : theories) table.emplace_back(theory_id(t), &t);
  TheoryResolver r;
  r.by_id = [table](const TheoryId& id) -> const TheorySpec* {
    for (const auto& [tid, spec] : table)
      if (tid == id) return spec;
    return nullptr;
  };
  r.by_name = [table](std::string_view name) -> const TheorySpec* {
    for (const auto& [tid, spec] : table)
      if (spec->name == name) return spec;
    return nullptr;
  };
  return r;
}

}  // namespace fc::docform
