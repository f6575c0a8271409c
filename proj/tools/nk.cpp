namespace nk { int run_cli(int, char**); }
int main(int argc, char** argv) { return nk::run_cli(argc, argv); }
