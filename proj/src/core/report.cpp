namespace nikmop {}
