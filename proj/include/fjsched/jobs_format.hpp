#pragma once

#include <string_view>

#include "fjsched/instance.hpp"

namespace fjsched {

/// Best-effort reader for job-block instance files, the layout commonly used
/// to distribute FJS instances with sequencing flexibility:
///
///     <job_count> <machine_count>
///     then per job:
///       <op_count_in_job>
///       op_count_in_job lines: <e> <k_1> <p_1> ... <k_e> <p_e>
///       <arc_count_in_job>
///       arc_count_in_job lines: <i> <j>   (1-based, local to the job)
///
/// Operations are numbered globally in job order. '#' comments and blank
/// lines are skipped. Machine ids may be 0-based in the source; if any 0
/// machine id is seen all machine ids are shifted by one.
/// Not yet checked against real distribution files.
Instance parse_jobs_format(std::string_view text);

}  // namespace fjsched
