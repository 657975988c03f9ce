/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* Out-of-bounds write: the index is only checked from below. */
int nondet_int(void);

int main(void) {
  int buffer[4];
  int i = nondet_int();
  if (i >= 0)
    buffer[i] = 1;
  return 0;
}
