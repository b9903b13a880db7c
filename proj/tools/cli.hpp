#pragma once

namespace zsf::cli {
int run(int argc, char** argv);
}
