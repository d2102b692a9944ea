// airbargain - joint group-head selection and airtime allocation via Nash bargaining
// Copyright (C) 2026 The airbargain authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "airbargain/log.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace airbargain {

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("AIRBARGAIN_LOG");
        if (env == nullptr) return 0;
        if (std::strcmp(env, "debug") == 0 || std::strcmp(env, "2") == 0) return 2;
        if (std::strcmp(env, "info") == 0 || std::strcmp(env, "1") == 0) return 1;
        return 0;
    }();
    return level;
}

namespace {
void vlog(const char* tag, const char* fmt, va_list args) {
    std::fprintf(stderr, "[%s] ", tag);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
}
}  // namespace

void log_info(const char* fmt, ...) {
    if (log_level() < 1) return;
    va_list args;
    va_start(args, fmt);
    vlog("info", fmt, args);
    va_end(args);
}

void log_debug(const char* fmt, ...) {
    if (log_level() < 2) return;
    va_list args;
    va_start(args, fmt);
    vlog("debug", fmt, args);
    va_end(args);
}

}  // namespace airbargain
