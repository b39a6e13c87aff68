# wittforge: exact Witt vector, prism and coequalizer arithmetic
