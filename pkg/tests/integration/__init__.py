"""End-to-end tests of the sja command line."""
