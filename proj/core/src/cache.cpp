namespace torfib {}
