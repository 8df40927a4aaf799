#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "linlab/history.hpp"
#include "linlab/impl_hwq.hpp"
#include "linlab/impl_tss.hpp"
#include "linlab/lts.hpp"

namespace linlab {

using Workload = std::variant<QueueWorkload, StackWorkload>;

// Queue workloads: {"enqs":[values], "deqs":n}
// Stack workloads: {"pushes":[{"value":v,"thread":t}], "pops":[{"thread":t}],
//                   "maxThreads":n}
Workload parse_workload(const std::string& json_text);
Workload load_workload(const std::string& path);

struct SystemInfo {
  std::string id;
  std::string summary;
  bool stack_workload;
};

// Stable listing of every buildable system.
const std::vector<SystemInfo>& list_systems();

struct BuildOptions {
  bool strict_tss = false;
};

// Instantiates a registered system over the given workload. Throws BadConfig
// for unknown ids or workload kind mismatches.
std::unique_ptr<System> make_system(const std::string& id, const Workload& wl,
                                    const BuildOptions& opts = {});

// Queue ids get the FIFO oracle spec, stack ids the LIFO one.
SequentialSpec oracle_spec_for(const std::string& id);

}  // namespace linlab
