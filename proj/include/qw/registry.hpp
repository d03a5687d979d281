#pragma once

#include <string>
#include <vector>

#include "qw/walk.hpp"

namespace qw {

struct RegistryEntry {
  std::string name;
  std::string params;  // "" or "a"
  int d;
  int n;
  std::string blurb;
};

const std::vector<RegistryEntry>& registry_entries();

// Instantiate a built-in walk by name; parameterized families need args.
WalkDefinition make_registry_walk(const std::string& name, const std::vector<double>& args = {});

// Resolve "@name" or "@name(arg,...)"; plain paths return nullopt-like
// behaviour via the bool.  SchemaError on unknown names or bad arity.
bool is_registry_ref(const std::string& token);
WalkDefinition resolve_registry(const std::string& token);

}  // namespace qw
