// Copyright 2026 The imnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "imnoma/analysis.hpp"
#include "imnoma/channel.hpp"
#include "imnoma/common.hpp"
#include "imnoma/config.hpp"
#include "imnoma/constellation.hpp"
#include "imnoma/fft.hpp"
#include "imnoma/harness.hpp"
#include "imnoma/im_codec.hpp"
#include "imnoma/rng.hpp"
#include "imnoma/rx_chain.hpp"
#include "imnoma/selfcheck.hpp"
#include "imnoma/tx_chain.hpp"
