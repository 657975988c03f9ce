/*******************************************************************************
 * Copyright (c) 2026 The qverify Authors.                                     *
 * All rights reserved.                                                        *
 *                                                                             *
 * This source code and the accompanying materials are made available under    *
 * the terms of the Apache License 2.0 which accompanies this distribution.    *
 ******************************************************************************/

/* Memory leak: the allocation is freed on one branch only. */
#include <stdlib.h>
int nondet_int(void);

int main(void) {
  int *p = malloc(sizeof(int));
  if (nondet_int())
    free(p);
  return 0;
}
