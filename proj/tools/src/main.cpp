#include <cstdlib>
#include <iostream>

#include "invset_cli/dispatch.hpp"

int main(int argc, char** argv) {
  invset::cli::Environment env;
  if (const char* seed = std::getenv(invset::cli::kSeedEnvVar)) env.default_seed = seed;
  return invset::cli::dispatch({argv + 1, argv + argc}, std::cout, std::cerr, env);
}
