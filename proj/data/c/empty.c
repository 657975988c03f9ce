/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* Nothing can go wrong here. */
int main(void) { return 0; }
