#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "fc/docform/text.hpp"

namespace fc::docform {

/// The hereditarily-finite set theory every chain starts with.
const TheorySpec& builtin_theory();
const std::string& builtin_theory_text();

std::string read_file(const std::filesystem::path& path);
TheorySpec load_theory(const std::filesystem::path& path);

/// Resolves theories from a fixed list (matched by id or by name). The list
/// must outlive the resolver.
TheoryResolver resolver_for(std::span<const TheorySpec> theories);

}  // namespace fc::docform
