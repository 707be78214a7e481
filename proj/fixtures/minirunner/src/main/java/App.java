class App {
  String greet(String name) {
    if (name == null) {
      return "nobody";
    }
    return "hi " + name;
  }
}
