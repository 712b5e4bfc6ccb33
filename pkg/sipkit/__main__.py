from sipkit.main import main

main()
