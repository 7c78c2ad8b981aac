/*
Copyright 2026 The Stereo SELD Toolkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Umbrella header.

#ifndef SSELD_SSELD_H_
#define SSELD_SSELD_H_

#include "sseld/angles.h"
#include "sseld/core_audio.h"
#include "sseld/error.h"
#include "sseld/hungarian.h"
#include "sseld/image.h"
#include "sseld/labels.h"
#include "sseld/metrics.h"
#include "sseld/pipeline.h"
#include "sseld/projection.h"
#include "sseld/sampler.h"
#include "sseld/spatializer.h"
#include "sseld/text.h"
#include "sseld/wav_io.h"

#endif  // SSELD_SSELD_H_
