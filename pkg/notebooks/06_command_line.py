# The `laxton` command, driven from Python. Every call below works verbatim in a shell.

from laxton.cli import main

main(["rank", "-P", "1", "-Q", "-1", "-p", "29"])
main(["law", "mul", "2,1", "1,1", "-P", "1", "-Q", "-1"])
main(["law", "act", "1,0", "-P", "1", "-Q", "-1", "--nu", "10"])
main(["reduce", "3,2", "-P", "1", "-Q", "-1", "-p", "3"])
main(["classify", "1,2", "-P", "1", "-Q", "-1", "-p", "11"])
main(["finite-group", "-P", "1", "-Q", "-2", "-p", "3", "--elements"])
main(["structure", "-P", "2", "-Q", "-17", "-p", "3"])

# %% a small sweep; one JSON line per (P, Q, p), summary on stderr
main(["verify", "-P", "1", "-Q", "-1", "--prime-bound", "20", "--no-timing"])
