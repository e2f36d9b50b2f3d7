#ifndef BNCLAB_IO_HPP
#define BNCLAB_IO_HPP

#include "bnclab/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace bnclab {

// Instance file format: rationals as canonical "p/q" strings, cut pools
// keyed by pool name. Round-trips bit-exactly.
std::string instance_to_json(const Instance& instance,
                             const std::map<std::string, std::vector<Cut>>& pools);

struct LoadedInstance {
    Instance instance;
    std::map<std::string, std::vector<Cut>> pools;
};

LoadedInstance instance_from_json(const std::string& text);

}  // namespace bnclab

#endif
