class App {
  String id() {
    return make();
  }
}
