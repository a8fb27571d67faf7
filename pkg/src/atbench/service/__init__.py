"""HTTP service exposing sessions over the mutation workbench."""
